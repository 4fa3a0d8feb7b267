#pragma once

#include <cstdint>
#include <vector>

#include "mbred/linalg.hpp"

namespace mbred {

/// A point of the projective Hilbert space, held as a rank-1 projector with a
/// unit representative ket. The representative's phase is an arbitrary gauge:
/// equality is tr(P1 P2) >= 1 - point_eq_tol, never ket comparison.
class PurePoint {
public:
    static PurePoint from_ket(const Ket& phi);

    int dim() const { return representative_.dim(); }
    const Ket& representative() const { return representative_; }
    const Matrix& projector() const { return projector_; }

    bool approx_equal(const PurePoint& other) const;

private:
    explicit PurePoint(Ket unit_representative);

    Ket representative_;
    Matrix projector_;
};

inline bool point_equal(const PurePoint& a, const PurePoint& b) { return a.approx_equal(b); }

// phi (any nonzero vector) -> the point of its ray.
PurePoint pure_from_ket(const Ket& phi);

// tr(PQ) = |<phi,psi>|^2, clamped to [0,1].
double transition_probability(const PurePoint& p, const PurePoint& q);

// sqrt(1 - tr(PQ)): the metric induced by the operator norm. Computed from
// the closed form; the eigendecomposition of P - Q is kept as a test oracle.
double dist_opnorm(const PurePoint& p, const PurePoint& q);

// 2 * dist_opnorm: the metric induced by the trace norm.
double dist_trace(const PurePoint& p, const PurePoint& q);

// Haar-distributed pure points (normalized complex Gaussian kets), one child
// seed per sample.
std::vector<PurePoint> sample_haar_pure(int dim, int count, std::uint64_t seed);

// Membership in the weak neighborhood of `center` cut out by the probe
// points: |tr(candidate Q_i) - tr(center Q_i)| < epsilon for every probe.
// Strict inequality on purpose; with probes = {center} and epsilon = eps^2
// this is exactly the open ball of radius eps.
bool in_weak_neighborhood(const PurePoint& candidate, const PurePoint& center,
                          const std::vector<PurePoint>& probes, double epsilon);

}  // namespace mbred
