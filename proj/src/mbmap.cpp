#include "mbred/mbmap.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace mbred {

ClassicalEffect ClassicalEffect::from_effect(Effect a) {
    ClassicalEffect f;
    f.effect_ = std::make_shared<const Effect>(std::move(a));
    auto held = f.effect_;
    f.eval_ = [held](const PurePoint& p) {
        if (p.dim() != held->dim()) {
            throw ValidationError("ClassicalEffect: dimension mismatch");
        }
        const double v = (held->matrix() * p.projector()).trace().real();
        return std::clamp(v, 0.0, 1.0);
    };
    return f;
}

ClassicalEffect ClassicalEffect::tabulated(std::vector<PurePoint> points,
                                           std::vector<double> values) {
    if (points.size() != values.size()) {
        throw ValidationError("ClassicalEffect::tabulated: points/values size mismatch");
    }
    for (double v : values) {
        if (v < 0.0 || v > 1.0) {
            throw ValidationError("ClassicalEffect::tabulated: value outside [0, 1]");
        }
    }
    ClassicalEffect f;
    auto table = std::make_shared<std::pair<std::vector<PurePoint>, std::vector<double>>>(
        std::move(points), std::move(values));
    f.eval_ = [table](const PurePoint& p) {
        for (std::size_t i = 0; i < table->first.size(); ++i) {
            if (table->first[i].approx_equal(p)) return table->second[i];
        }
        throw ValidationError("ClassicalEffect: tabulated effect undefined at this point");
    };
    return f;
}

ClassicalEffect ClassicalEffect::indicator(std::function<bool(const PurePoint&)> predicate) {
    ClassicalEffect f;
    f.eval_ = [pred = std::move(predicate)](const PurePoint& p) { return pred(p) ? 1.0 : 0.0; };
    return f;
}

double ClassicalEffect::operator()(const PurePoint& p) const {
    return eval_(p);
}

DensityOperator reduce(const PureMeasure& mu) {
    const int dim = mu.support().front().point.dim();
    Matrix acc = Matrix::Zero(dim, dim);
    for (const auto& e : mu.support()) {
        if (e.point.dim() != dim) {
            throw ValidationError("reduce: support points have mixed dimensions");
        }
        acc += e.weight * e.point.projector();
    }
    return DensityOperator(HermitianOperator(acc));
}

ClassicalEffect adjoint_effect(const Effect& a) {
    return ClassicalEffect::from_effect(a);
}

PureMeasure eigen_ensemble(const DensityOperator& w) {
    const EigenSystem es = eig_hermitian(w.hermitian());
    const double floor = tolerances().weight_floor;
    std::vector<PureMeasure::Entry> entries;
    for (int k = 0; k < es.eigenvalues.size(); ++k) {
        const double p = es.eigenvalues(k);
        if (p > floor) {
            entries.push_back({pure_from_ket(es.eigenvector(k)), p});
        }
    }
    return PureMeasure(std::move(entries));
}

PureMeasure alternative_ensemble(const DensityOperator& w, const Matrix& mixer) {
    const EigenSystem es = eig_hermitian(w.hermitian());
    const double floor = tolerances().weight_floor;

    std::vector<double> probs;
    std::vector<int> cols;
    for (int k = 0; k < es.eigenvalues.size(); ++k) {
        if (es.eigenvalues(k) > floor) {
            probs.push_back(es.eigenvalues(k));
            cols.push_back(k);
        }
    }
    const int rank = static_cast<int>(probs.size());
    if (mixer.cols() != rank) {
        throw ValidationError("alternative_ensemble: mixer must have rank(W) = " +
                              std::to_string(rank) + " columns, got " +
                              std::to_string(mixer.cols()));
    }
    if (mixer.rows() < rank) {
        throw ValidationError("alternative_ensemble: mixer needs at least rank(W) rows");
    }
    const Matrix gram = mixer.adjoint() * mixer;
    const double defect = (gram - Matrix::Identity(rank, rank)).cwiseAbs().maxCoeff();
    if (defect > tolerances().recon_tol) {
        throw ValidationError("alternative_ensemble: mixer columns are not orthonormal");
    }

    std::vector<PureMeasure::Entry> entries;
    for (int j = 0; j < mixer.rows(); ++j) {
        Vector psi = Vector::Zero(w.dim());
        for (int i = 0; i < rank; ++i) {
            psi += mixer(j, i) * std::sqrt(probs[static_cast<std::size_t>(i)]) *
                   es.eigenvectors.col(cols[static_cast<std::size_t>(i)]);
        }
        const double q = psi.squaredNorm();
        if (q >= floor) {
            entries.push_back({pure_from_ket(Ket(std::move(psi))), q});
        }
    }
    return PureMeasure(std::move(entries));
}

double support_concentration(const PureMeasure& mu, const PurePoint& p) {
    const double threshold = 1.0 - tolerances().point_eq_tol;
    double acc = 0.0;
    for (const auto& e : mu.support()) {
        if (transition_probability(e.point, p) >= threshold) acc += e.weight;
    }
    return acc;
}

double purity(const DensityOperator& w) {
    return (w.matrix() * w.matrix()).trace().real();
}

PurePoint as_pure_point(const DensityOperator& w) {
    if (purity(w) < 1.0 - tolerances().purity_tol) {
        throw ValidationError("as_pure_point: density operator is not rank-1 (purity " +
                              std::to_string(purity(w)) + ")");
    }
    const EigenSystem es = eig_hermitian(w.hermitian());
    return pure_from_ket(es.eigenvector(static_cast<int>(es.eigenvalues.size()) - 1));
}

Matrix random_isometry(int rows, int cols, std::uint64_t seed) {
    if (cols < 1 || rows < cols) {
        throw ValidationError("random_isometry requires rows >= cols >= 1");
    }
    return random_haar_unitary(rows, seed).leftCols(cols);
}

PureMeasure random_pure_measure(int dim, int support_size, std::uint64_t seed) {
    if (support_size < 1) {
        throw ValidationError("random_pure_measure requires support_size >= 1");
    }
    std::vector<PurePoint> points = sample_haar_pure(dim, support_size, mix_seed(seed, 1));
    Rng rng = make_rng(mix_seed(seed, 2));
    std::exponential_distribution<double> expo(1.0);
    std::vector<PureMeasure::Entry> entries;
    entries.reserve(points.size());
    double total = 0.0;
    std::vector<double> raw(points.size());
    for (double& x : raw) {
        x = expo(rng);
        total += x;
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        entries.push_back({points[i], raw[i] / total});
    }
    return PureMeasure(std::move(entries));
}

}  // namespace mbred
