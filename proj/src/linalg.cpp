#include "mbred/linalg.hpp"

#include <cmath>
#include <string>

namespace mbred {

namespace {

double max_abs_entry(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

Ket::Ket(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) {
        throw ValidationError("Ket requires dim >= 1");
    }
}

Complex Ket::inner(const Ket& other) const {
    if (other.dim() != dim()) {
        throw ValidationError("Ket inner product: dimension mismatch");
    }
    return amplitudes_.dot(other.amplitudes_);
}

Ket Ket::normalized() const {
    const double n = norm();
    if (n <= 0.0) {
        throw ValidationError("cannot normalize the zero vector");
    }
    return Ket(amplitudes_ / n);
}

Ket Ket::basis(int dim, int index) {
    if (dim < 1 || index < 0 || index >= dim) {
        throw ValidationError("Ket::basis: index out of range");
    }
    Vector v = Vector::Zero(dim);
    v(index) = Complex(1.0, 0.0);
    return Ket(std::move(v));
}

HermitianOperator::HermitianOperator(const Matrix& m) {
    if (m.rows() < 1 || m.rows() != m.cols()) {
        throw ValidationError("HermitianOperator requires a square matrix, dim >= 1");
    }
    const double asym = max_abs_entry(m - m.adjoint());
    if (asym > tolerances().herm_tol) {
        throw ValidationError("matrix is not Hermitian: max |M - M*| = " + std::to_string(asym));
    }
    // Validation first, then symmetrize so round-off never leaks downstream.
    matrix_ = 0.5 * (m + m.adjoint());
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
    const auto& tol = tolerances();
    const EigenSystem es = eig_hermitian(op_);
    if (es.eigenvalues(0) < -tol.psd_tol) {
        throw ValidationError("DensityOperator: negative eigenvalue " +
                              std::to_string(es.eigenvalues(0)));
    }
    const double tr = op_.trace();
    if (std::abs(tr - 1.0) > tol.trace_tol) {
        throw ValidationError("DensityOperator: trace " + std::to_string(tr) + " != 1");
    }
}

Effect::Effect(HermitianOperator op) : op_(std::move(op)) {
    const auto& tol = tolerances();
    const EigenSystem es = eig_hermitian(op_);
    const double lo = es.eigenvalues(0);
    const double hi = es.eigenvalues(es.eigenvalues.size() - 1);
    if (lo < -tol.psd_tol || hi > 1.0 + tol.psd_tol) {
        throw ValidationError("Effect: spectrum [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "] escapes [0, 1]");
    }
}

Effect Effect::identity(int dim) {
    return Effect(HermitianOperator(Matrix::Identity(dim, dim)));
}

Effect Effect::zero(int dim) {
    return Effect(HermitianOperator(Matrix::Zero(dim, dim)));
}

EigenSystem eig_hermitian(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw NumericError("Hermitian eigensolver failed to converge (dim " +
                           std::to_string(h.dim()) + ")");
    }
    return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

double operator_norm(const HermitianOperator& h) {
    const EigenSystem es = eig_hermitian(h);
    return es.eigenvalues.cwiseAbs().maxCoeff();
}

double trace_norm(const HermitianOperator& h) {
    const EigenSystem es = eig_hermitian(h);
    return es.eigenvalues.cwiseAbs().sum();
}

Matrix random_ginibre(int dim, std::uint64_t seed) {
    if (dim < 1) {
        throw ValidationError("random_ginibre requires dim >= 1");
    }
    Rng rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            g(r, c) = Complex(gauss(rng), gauss(rng));
        }
    }
    return g;
}

Matrix random_haar_unitary(int dim, std::uint64_t seed) {
    const Matrix g = random_ginibre(dim, seed);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fold the triangular factor's diagonal phases into Q; this makes the
    // distribution Haar rather than merely unitary.
    for (int k = 0; k < dim; ++k) {
        const Complex d = r(k, k);
        const double a = std::abs(d);
        q.col(k) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

DensityOperator random_density(int dim, std::uint64_t seed) {
    const Matrix g = random_ginibre(dim, seed);
    Matrix w = g * g.adjoint();
    w /= w.trace().real();
    return DensityOperator(HermitianOperator(w));
}

Effect random_effect(int dim, std::uint64_t seed) {
    const Matrix u = random_haar_unitary(dim, seed);
    Rng rng = make_rng(mix_seed(seed, 0x5eed));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector diag(dim);
    for (int k = 0; k < dim; ++k) diag(k) = Complex(unit(rng), 0.0);
    return Effect(HermitianOperator(u * diag.asDiagonal() * u.adjoint()));
}

HermitianOperator random_hermitian(int dim, std::uint64_t seed) {
    const Matrix g = random_ginibre(dim, seed);
    return HermitianOperator(0.5 * (g + g.adjoint()));
}

PartialIsometry::PartialIsometry(const std::vector<Ket>& initial_basis, int target_dim)
    : initial_basis_(initial_basis) {
    if (target_dim < 1) {
        throw ValidationError("PartialIsometry requires target_dim >= 1");
    }
    if (static_cast<int>(initial_basis.size()) != target_dim) {
        throw ValidationError("PartialIsometry: |basis| must equal target_dim");
    }
    const int source_dim = initial_basis.front().dim();
    const auto& tol = tolerances();
    for (std::size_t i = 0; i < initial_basis.size(); ++i) {
        if (initial_basis[i].dim() != source_dim) {
            throw ValidationError("PartialIsometry: basis kets have mixed dimensions");
        }
        for (std::size_t j = 0; j <= i; ++j) {
            const Complex g = initial_basis[i].inner(initial_basis[j]);
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - expected) > tol.unit_tol) {
                throw ValidationError("PartialIsometry: basis is not orthonormal");
            }
        }
    }
    // V = sum_k |f_k><k-th basis ket|, so V phi = (<b_k|phi>)_k.
    matrix_ = Matrix::Zero(target_dim, source_dim);
    for (int k = 0; k < target_dim; ++k) {
        matrix_.row(k) = initial_basis[static_cast<std::size_t>(k)].amplitudes().adjoint();
    }
}

Ket PartialIsometry::apply(const Ket& phi) const {
    if (phi.dim() != source_dim()) {
        throw ValidationError("PartialIsometry::apply: dimension mismatch");
    }
    return Ket(matrix_ * phi.amplitudes());
}

}  // namespace mbred
