#include "mbred/projective.hpp"

#include <algorithm>
#include <cmath>

namespace mbred {

PurePoint::PurePoint(Ket unit_representative)
    : representative_(std::move(unit_representative)),
      projector_(representative_.amplitudes() * representative_.amplitudes().adjoint()) {}

PurePoint PurePoint::from_ket(const Ket& phi) {
    return PurePoint(phi.normalized());
}

bool PurePoint::approx_equal(const PurePoint& other) const {
    if (other.dim() != dim()) return false;
    return transition_probability(*this, other) >= 1.0 - tolerances().point_eq_tol;
}

PurePoint pure_from_ket(const Ket& phi) {
    return PurePoint::from_ket(phi);
}

double transition_probability(const PurePoint& p, const PurePoint& q) {
    if (p.dim() != q.dim()) {
        throw ValidationError("transition_probability: dimension mismatch");
    }
    const double t = std::norm(p.representative().inner(q.representative()));
    return std::clamp(t, 0.0, 1.0);
}

double dist_opnorm(const PurePoint& p, const PurePoint& q) {
    const double t = transition_probability(p, q);
    return std::sqrt(std::clamp(1.0 - t, 0.0, 1.0));
}

double dist_trace(const PurePoint& p, const PurePoint& q) {
    return 2.0 * dist_opnorm(p, q);
}

std::vector<PurePoint> sample_haar_pure(int dim, int count, std::uint64_t seed) {
    if (dim < 1) throw ValidationError("sample_haar_pure requires dim >= 1");
    if (count < 0) throw ValidationError("sample_haar_pure requires count >= 0");
    std::vector<PurePoint> points;
    points.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Rng rng = make_rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        Vector v(dim);
        for (int k = 0; k < dim; ++k) v(k) = Complex(gauss(rng), gauss(rng));
        points.push_back(pure_from_ket(Ket(std::move(v))));
    }
    return points;
}

bool in_weak_neighborhood(const PurePoint& candidate, const PurePoint& center,
                          const std::vector<PurePoint>& probes, double epsilon) {
    if (probes.empty()) {
        throw ValidationError("in_weak_neighborhood: probe list must be nonempty");
    }
    if (epsilon <= 0.0) {
        throw ValidationError("in_weak_neighborhood: epsilon must be positive");
    }
    for (const PurePoint& probe : probes) {
        const double a = transition_probability(candidate, probe);
        const double b = transition_probability(center, probe);
        if (!(std::abs(a - b) < epsilon)) return false;
    }
    return true;
}

}  // namespace mbred
