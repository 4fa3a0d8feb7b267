#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mbred/linalg.hpp"
#include "mbred/mbmap.hpp"
#include "mbred/projective.hpp"

namespace mbred {

/// Discrete positive operator-valued measure: effects F(b), b = 0..n-1, with
/// sum_b F(b) = I within recon_tol.
class Povm {
public:
    explicit Povm(std::vector<Effect> outcomes);

    int dim() const { return outcomes_.front().dim(); }
    int outcome_count() const { return static_cast<int>(outcomes_.size()); }
    const std::vector<Effect>& outcomes() const { return outcomes_; }

private:
    std::vector<Effect> outcomes_;
};

/// Fuzzy random variable on the projective space with a finite outcome set:
/// K(P, .) is a probability vector for every point P.
class MarkovKernel {
public:
    MarkovKernel(std::function<double(const PurePoint&, int)> eval, int outcome_count);

    int outcome_count() const { return outcome_count_; }
    double operator()(const PurePoint& p, int outcome) const;
    std::vector<double> row(const PurePoint& p) const;

private:
    std::function<double(const PurePoint&, int)> eval_;
    int outcome_count_;
};

// K(P, b) = tr(P F(b)); rows normalize by POVM completeness.
MarkovKernel kernel_from_povm(const Povm& f);

// b -> tr(W F(b)).
std::vector<double> quantum_distribution(const Povm& f, const DensityOperator& w);

// b -> sum_i w_i K(P_i, b).
std::vector<double> classical_distribution(const MarkovKernel& k, const PureMeasure& mu);

// Two-stage hidden-variables sampling: ontic state P ~ mu, then outcome
// b ~ K(P, .). One child seed per draw, so counts are independent of
// evaluation order.
std::vector<std::int64_t> simulate_outcomes(const MarkovKernel& k, const PureMeasure& mu,
                                            std::int64_t count, std::uint64_t seed);

// Minimum RMS of tr(P_i A) - label_i over all Hermitian A (unconstrained
// least squares in the d^2 real parameters of A). A strictly positive value
// witnesses that no quantum effect reproduces these sharp labels.
double sharp_effect_residual(const std::vector<PurePoint>& points,
                             const std::vector<int>& labels);

// n positive Ginibre blocks symmetrized by S^{-1/2}: completeness is exact by
// construction.
Povm random_povm(int dim, int outcomes, std::uint64_t seed);

// Projective measurement in an orthonormal basis.
Povm pvm_from_basis(const std::vector<Ket>& basis);

}  // namespace mbred
