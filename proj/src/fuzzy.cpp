#include "mbred/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

namespace mbred {

Povm::Povm(std::vector<Effect> outcomes) : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) {
        throw ValidationError("Povm requires at least one outcome");
    }
    const int d = outcomes_.front().dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const Effect& e : outcomes_) {
        if (e.dim() != d) {
            throw ValidationError("Povm: outcome effects have mixed dimensions");
        }
        sum += e.matrix();
    }
    const double defect = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > tolerances().recon_tol) {
        throw ValidationError("Povm: outcomes sum to I only up to " + std::to_string(defect));
    }
}

MarkovKernel::MarkovKernel(std::function<double(const PurePoint&, int)> eval, int outcome_count)
    : eval_(std::move(eval)), outcome_count_(outcome_count) {
    if (outcome_count_ < 1) {
        throw ValidationError("MarkovKernel requires outcome_count >= 1");
    }
}

double MarkovKernel::operator()(const PurePoint& p, int outcome) const {
    if (outcome < 0 || outcome >= outcome_count_) {
        throw ValidationError("MarkovKernel: outcome index out of range");
    }
    return std::clamp(eval_(p, outcome), 0.0, 1.0);
}

std::vector<double> MarkovKernel::row(const PurePoint& p) const {
    std::vector<double> r(static_cast<std::size_t>(outcome_count_));
    for (int b = 0; b < outcome_count_; ++b) r[static_cast<std::size_t>(b)] = (*this)(p, b);
    return r;
}

MarkovKernel kernel_from_povm(const Povm& f) {
    auto held = std::make_shared<const Povm>(f);
    return MarkovKernel(
        [held](const PurePoint& p, int b) {
            if (p.dim() != held->dim()) {
                throw ValidationError("MarkovKernel: dimension mismatch");
            }
            return (held->outcomes()[static_cast<std::size_t>(b)].matrix() * p.projector())
                .trace()
                .real();
        },
        f.outcome_count());
}

std::vector<double> quantum_distribution(const Povm& f, const DensityOperator& w) {
    if (f.dim() != w.dim()) {
        throw ValidationError("quantum_distribution: dimension mismatch");
    }
    std::vector<double> dist;
    dist.reserve(static_cast<std::size_t>(f.outcome_count()));
    double sum = 0.0;
    for (const Effect& e : f.outcomes()) {
        const double p = (e.matrix() * w.matrix()).trace().real();
        if (p < -1e-12) {
            throw NumericError("quantum_distribution: outcome probability " + std::to_string(p));
        }
        dist.push_back(std::clamp(p, 0.0, 1.0));
        sum += dist.back();
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw NumericError("quantum_distribution: probabilities sum to " + std::to_string(sum));
    }
    return dist;
}

std::vector<double> classical_distribution(const MarkovKernel& k, const PureMeasure& mu) {
    std::vector<double> dist(static_cast<std::size_t>(k.outcome_count()), 0.0);
    for (const auto& e : mu.support()) {
        for (int b = 0; b < k.outcome_count(); ++b) {
            dist[static_cast<std::size_t>(b)] += e.weight * k(e.point, b);
        }
    }
    double sum = 0.0;
    for (double p : dist) sum += p;
    if (std::abs(sum - 1.0) > 1e-10) {
        throw NumericError("classical_distribution: probabilities sum to " + std::to_string(sum));
    }
    return dist;
}

std::vector<std::int64_t> simulate_outcomes(const MarkovKernel& k, const PureMeasure& mu,
                                            std::int64_t count, std::uint64_t seed) {
    if (count < 0) {
        throw ValidationError("simulate_outcomes requires count >= 0");
    }
    std::vector<std::int64_t> counts(static_cast<std::size_t>(k.outcome_count()), 0);
    const auto& support = mu.support();
    for (std::int64_t draw = 0; draw < count; ++draw) {
        Rng rng = make_rng(mix_seed(seed, static_cast<std::uint64_t>(draw)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        // Ontic state by inverse CDF over the support weights.
        double u = unit(rng);
        std::size_t idx = support.size() - 1;
        double cdf = 0.0;
        for (std::size_t i = 0; i < support.size(); ++i) {
            cdf += support[i].weight;
            if (u < cdf) {
                idx = i;
                break;
            }
        }

        // Outcome by inverse CDF over the kernel row.
        const std::vector<double> row = k.row(support[idx].point);
        double v = unit(rng);
        int outcome = k.outcome_count() - 1;
        cdf = 0.0;
        for (int b = 0; b < k.outcome_count(); ++b) {
            cdf += row[static_cast<std::size_t>(b)];
            if (v < cdf) {
                outcome = b;
                break;
            }
        }
        ++counts[static_cast<std::size_t>(outcome)];
    }
    return counts;
}

double sharp_effect_residual(const std::vector<PurePoint>& points,
                             const std::vector<int>& labels) {
    if (points.empty() || points.size() != labels.size()) {
        throw ValidationError("sharp_effect_residual: need equally many points and labels, >= 1");
    }
    for (int label : labels) {
        if (label != 0 && label != 1) {
            throw ValidationError("sharp_effect_residual: labels must be 0 or 1");
        }
    }
    const int d = points.front().dim();
    const int n = static_cast<int>(points.size());
    const int params = d * d;

    // tr(P A) is linear in the d^2 real parameters of Hermitian A: diagonal
    // entries, then re/im parts of the upper triangle.
    Eigen::MatrixXd design(n, params);
    Eigen::VectorXd target(n);
    for (int i = 0; i < n; ++i) {
        if (points[static_cast<std::size_t>(i)].dim() != d) {
            throw ValidationError("sharp_effect_residual: points have mixed dimensions");
        }
        const Matrix& p = points[static_cast<std::size_t>(i)].projector();
        int col = 0;
        for (int j = 0; j < d; ++j) {
            design(i, col++) = p(j, j).real();
        }
        for (int j = 0; j < d; ++j) {
            for (int l = j + 1; l < d; ++l) {
                design(i, col++) = 2.0 * p(l, j).real();
                design(i, col++) = -2.0 * p(l, j).imag();
            }
        }
        target(i) = static_cast<double>(labels[static_cast<std::size_t>(i)]);
    }
    const Eigen::VectorXd solution =
        design.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(target);
    const double rss = (design * solution - target).squaredNorm();
    return std::sqrt(rss / static_cast<double>(n));
}

Povm random_povm(int dim, int outcomes, std::uint64_t seed) {
    if (dim < 1 || outcomes < 1) {
        throw ValidationError("random_povm requires dim >= 1 and outcomes >= 1");
    }
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(outcomes));
    Matrix s = Matrix::Zero(dim, dim);
    for (int b = 0; b < outcomes; ++b) {
        const Matrix g = random_ginibre(dim, mix_seed(seed, static_cast<std::uint64_t>(b)));
        blocks.push_back(g * g.adjoint());
        s += blocks.back();
    }
    // S^{-1/2} through the spectral decomposition; S is positive definite a.s.
    const EigenSystem es = eig_hermitian(HermitianOperator(s));
    Vector inv_sqrt(dim);
    for (int k = 0; k < dim; ++k) {
        const double lambda = es.eigenvalues(k);
        if (lambda <= 0.0) {
            throw NumericError("random_povm: singular normalization operator");
        }
        inv_sqrt(k) = Complex(1.0 / std::sqrt(lambda), 0.0);
    }
    const Matrix s_inv_sqrt =
        es.eigenvectors * inv_sqrt.asDiagonal() * es.eigenvectors.adjoint();
    std::vector<Effect> effects;
    effects.reserve(blocks.size());
    for (const Matrix& block : blocks) {
        effects.emplace_back(HermitianOperator(s_inv_sqrt * block * s_inv_sqrt));
    }
    return Povm(std::move(effects));
}

Povm pvm_from_basis(const std::vector<Ket>& basis) {
    if (basis.empty()) {
        throw ValidationError("pvm_from_basis requires a nonempty basis");
    }
    const int d = basis.front().dim();
    if (static_cast<int>(basis.size()) != d) {
        throw ValidationError("pvm_from_basis: basis must span the space");
    }
    std::vector<Effect> effects;
    effects.reserve(basis.size());
    for (const Ket& k : basis) {
        const Vector v = k.normalized().amplitudes();
        effects.emplace_back(HermitianOperator(v * v.adjoint()));
    }
    return Povm(std::move(effects));
}

}  // namespace mbred
