#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "mbred/errors.hpp"
#include "mbred/rng.hpp"
#include "mbred/tolerances.hpp"

namespace mbred {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// A vector of a finite-dimensional complex Hilbert space. Not required to be
/// normalized; state vectors are normalized on conversion to a pure point.
class Ket {
public:
    explicit Ket(Vector amplitudes);

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }
    double norm() const { return amplitudes_.norm(); }

    // <this|other>
    Complex inner(const Ket& other) const;

    // Throws ValidationError on the zero vector.
    Ket normalized() const;

    bool is_unit() const { return std::abs(norm() - 1.0) <= tolerances().unit_tol; }

    static Ket basis(int dim, int index);

private:
    Vector amplitudes_;
};

/// A self-adjoint operator. Construction validates hermiticity within
/// `herm_tol`, then stores (M + M*)/2 so round-off never leaks downstream.
class HermitianOperator {
public:
    explicit HermitianOperator(const Matrix& m);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    double trace() const { return matrix_.trace().real(); }

private:
    Matrix matrix_;
};

/// Positive unit-trace operator: a quantum state.
class DensityOperator {
public:
    explicit DensityOperator(HermitianOperator op);
    explicit DensityOperator(const Matrix& m) : DensityOperator(HermitianOperator(m)) {}

    int dim() const { return op_.dim(); }
    const Matrix& matrix() const { return op_.matrix(); }
    const HermitianOperator& hermitian() const { return op_; }

private:
    HermitianOperator op_;
};

/// Operator in the order interval [0, I].
class Effect {
public:
    explicit Effect(HermitianOperator op);
    explicit Effect(const Matrix& m) : Effect(HermitianOperator(m)) {}

    int dim() const { return op_.dim(); }
    const Matrix& matrix() const { return op_.matrix(); }
    const HermitianOperator& hermitian() const { return op_; }

    static Effect identity(int dim);
    static Effect zero(int dim);

private:
    HermitianOperator op_;
};

struct EigenSystem {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // orthonormal columns, k-th column pairs with eigenvalues[k]

    Ket eigenvector(int k) const { return Ket(eigenvectors.col(k)); }
};

// Spectral decomposition of a Hermitian operator. Within a degenerate
// eigenspace the returned basis is solver-dependent; callers must treat it as
// an arbitrary orthonormal choice.
EigenSystem eig_hermitian(const HermitianOperator& h);

// max |eigenvalue|
double operator_norm(const HermitianOperator& h);

// sum of |eigenvalues|
double trace_norm(const HermitianOperator& h);

// Haar-distributed unitary: Ginibre matrix + QR, with the triangular factor's
// diagonal phases folded into Q.
Matrix random_haar_unitary(int dim, std::uint64_t seed);

// dim x dim matrix of iid standard complex Gaussians.
Matrix random_ginibre(int dim, std::uint64_t seed);

// G G* / tr(G G*) with Ginibre G: full-rank samples almost surely.
DensityOperator random_density(int dim, std::uint64_t seed);

// U diag(u_1..u_d) U* with u_k uniform in [0,1]: covers the order interval.
Effect random_effect(int dim, std::uint64_t seed);

// Hermitian matrix with Gaussian entries, (G + G*)/2.
HermitianOperator random_hermitian(int dim, std::uint64_t seed);

/// V with V(k-th basis ket of K) = k-th standard basis ket of the target and
/// V K-perp = {0}; V*V is the orthogonal projection onto K.
class PartialIsometry {
public:
    PartialIsometry(const std::vector<Ket>& initial_basis, int target_dim);

    int source_dim() const { return static_cast<int>(matrix_.cols()); }
    int target_dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    const std::vector<Ket>& initial_basis() const { return initial_basis_; }

    // V*V
    Matrix initial_projection() const { return matrix_.adjoint() * matrix_; }

    Ket apply(const Ket& phi) const;

private:
    Matrix matrix_;
    std::vector<Ket> initial_basis_;
};

inline PartialIsometry partial_isometry(const std::vector<Ket>& basis, int target_dim) {
    return PartialIsometry(basis, target_dim);
}

}  // namespace mbred
