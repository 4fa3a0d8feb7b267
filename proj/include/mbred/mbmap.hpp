#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mbred/linalg.hpp"
#include "mbred/measures.hpp"
#include "mbred/projective.hpp"

namespace mbred {

/// Classical effect: a function on the projective space with values in [0,1].
/// Three evaluator shapes cover everything the library needs: the image f_A of
/// a quantum effect, a table over a fixed point set, and a 0/1 indicator.
class ClassicalEffect {
public:
    static ClassicalEffect from_effect(Effect a);
    static ClassicalEffect tabulated(std::vector<PurePoint> points, std::vector<double> values);
    static ClassicalEffect indicator(std::function<bool(const PurePoint&)> predicate);

    // Throws ValidationError when a tabulated effect has no entry for p.
    double operator()(const PurePoint& p) const;

    // The underlying quantum effect, or nullptr for tabulated/indicator shapes.
    const Effect* effect() const { return effect_.get(); }

private:
    ClassicalEffect() = default;

    std::shared_ptr<const Effect> effect_;
    std::function<double(const PurePoint&)> eval_;
};

using PureMeasure = DiscreteMeasure<PurePoint>;

// The barycenter sum_i w_i P_i: the unique density operator whose expectations
// match the measure's. Computed as a direct weighted matrix sum; the duality
// identity tr(reduce(mu) A) = <mu, f_A> is a test, not the implementation.
DensityOperator reduce(const PureMeasure& mu);

// A -> f_A with f_A(P) = tr(PA).
ClassicalEffect adjoint_effect(const Effect& a);

// Spectral ensemble of W: eigenprojections with eigenvalue > weight_floor.
PureMeasure eigen_ensemble(const DensityOperator& w);

// Ensemble mixing: given eigenpairs (p_i, v_i) of W (rank r) and a mixer M
// with r orthonormal columns and m >= r rows, the kets psi_j ~ sum_i M_ji
// sqrt(p_i) v_i with weights |psi_j|^2 form another ensemble of W.
PureMeasure alternative_ensemble(const DensityOperator& w, const Matrix& mixer);

// Total weight of support points Q with tr(QP) >= 1 - point_eq_tol.
double support_concentration(const PureMeasure& mu, const PurePoint& p);

// tr(W^2), in [1/dim, 1]; equals 1 exactly on pure states.
double purity(const DensityOperator& w);

// Top eigenvector as a point, defined when purity(w) >= 1 - purity_tol.
PurePoint as_pure_point(const DensityOperator& w);

// First `cols` columns of a Haar unitary of size `rows`.
Matrix random_isometry(int rows, int cols, std::uint64_t seed);

// Random measure: `support_size` Haar points with flat-Dirichlet weights.
PureMeasure random_pure_measure(int dim, int support_size, std::uint64_t seed);

}  // namespace mbred
