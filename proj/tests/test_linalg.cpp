#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mbred/linalg.hpp"
#include "oracles.hpp"

using namespace mbred;

namespace {

Ket superposition(const Ket& a, const Ket& b, Complex ca, Complex cb) {
    return Ket(ca * a.amplitudes() + cb * b.amplitudes());
}

oracle::Mat2 to_oracle(const Matrix& m) {
    return {{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}};
}

}  // namespace

TEST_CASE("ket basics") {
    const Ket e0 = Ket::basis(2, 0);
    const Ket e1 = Ket::basis(2, 1);
    CHECK(e0.dim() == 2);
    CHECK(e0.norm() == doctest::Approx(1.0));
    CHECK(std::abs(e0.inner(e1)) == doctest::Approx(0.0));
    CHECK(e0.inner(e0).real() == doctest::Approx(1.0));

    const Ket scaled(3.0 * e0.amplitudes());
    CHECK(scaled.normalized().norm() == doctest::Approx(1.0));

    CHECK_THROWS_AS(Ket(Vector::Zero(2)).normalized(), ValidationError);
    CHECK_THROWS_AS(Ket(Vector{}), ValidationError);
    CHECK_THROWS_AS(Ket::basis(2, 5), ValidationError);
    CHECK_THROWS_AS(e0.inner(Ket::basis(3, 0)), ValidationError);
}

TEST_CASE("hermitian validation and symmetrization") {
    Matrix m(2, 2);
    m << Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(2, 0);
    CHECK_NOTHROW(HermitianOperator{m});

    Matrix skew = m;
    skew(0, 1) = Complex(0.5, 1);  // breaks hermiticity well beyond herm_tol
    CHECK_THROWS_AS(HermitianOperator{skew}, ValidationError);

    Matrix jitter = m;
    jitter(0, 1) += Complex(1e-12, 0);
    const HermitianOperator h(jitter);
    CHECK((h.matrix() - h.matrix().adjoint()).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(HermitianOperator(Matrix::Zero(2, 3)), ValidationError);
}

TEST_CASE("eig_hermitian on the identity") {
    const HermitianOperator id(Matrix::Identity(2, 2));
    const EigenSystem es = eig_hermitian(id);
    CHECK(es.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(es.eigenvalues(1) == doctest::Approx(1.0));
    // Any orthonormal pair is acceptable in the degenerate space.
    CHECK(std::abs(es.eigenvector(0).inner(es.eigenvector(1))) < 1e-12);
}

TEST_CASE("eig_hermitian on a diagonal operator") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = Complex(0.3, 0);
    d(1, 1) = Complex(0.7, 0);
    const EigenSystem es = eig_hermitian(HermitianOperator(d));
    CHECK(es.eigenvalues(0) == doctest::Approx(0.3));
    CHECK(es.eigenvalues(1) == doctest::Approx(0.7));
    CHECK(std::norm(es.eigenvectors(0, 0)) == doctest::Approx(1.0));
    CHECK(std::norm(es.eigenvectors(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("projector difference eigenvalues against the characteristic-polynomial oracle") {
    // |<phi,psi>|^2 = 1/2
    const Ket phi = Ket::basis(2, 0);
    const Ket psi = superposition(Ket::basis(2, 0), Ket::basis(2, 1),
                                  Complex(1 / std::sqrt(2.0), 0),
                                  Complex(1 / std::sqrt(2.0), 0));
    const Matrix diff = phi.amplitudes() * phi.amplitudes().adjoint() -
                        psi.amplitudes() * psi.amplitudes().adjoint();
    const EigenSystem es = eig_hermitian(HermitianOperator(diff));

    const auto expected = oracle::eig2_hermitian(to_oracle(diff));
    CHECK(es.eigenvalues(0) == doctest::Approx(expected[0]).epsilon(1e-12));
    CHECK(es.eigenvalues(1) == doctest::Approx(expected[1]).epsilon(1e-12));
    CHECK(expected[0] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-12));
    CHECK(expected[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("spectral reconstruction over random hermitians") {
    int cases = 0;
    for (int dim = 2; dim <= 8; ++dim) {
        for (int i = 0; i < 143; ++i) {
            const HermitianOperator h =
                random_hermitian(dim, mix_seed(11, static_cast<std::uint64_t>(dim * 1000 + i)));
            const EigenSystem es = eig_hermitian(h);
            Matrix rebuilt = Matrix::Zero(dim, dim);
            for (int k = 0; k < dim; ++k) {
                rebuilt += es.eigenvalues(k) * es.eigenvectors.col(k) *
                           es.eigenvectors.col(k).adjoint();
            }
            REQUIRE((rebuilt - h.matrix()).norm() <= tolerances().recon_tol);
            for (int a = 0; a < dim; ++a) {
                for (int b = 0; b < a; ++b) {
                    REQUIRE(std::abs(es.eigenvectors.col(a).dot(es.eigenvectors.col(b))) <=
                            tolerances().unit_tol);
                }
                REQUIRE(std::abs(es.eigenvectors.col(a).norm() - 1.0) <= tolerances().unit_tol);
            }
            ++cases;
        }
    }
    CHECK(cases == 7 * 143);  // 1001 random operators, dims 2..8
}

TEST_CASE("operator and trace norms") {
    CHECK(operator_norm(HermitianOperator(Matrix::Zero(3, 3))) == 0.0);
    CHECK(operator_norm(HermitianOperator(Matrix::Identity(3, 3))) == doctest::Approx(1.0));

    // |<phi,psi>|^2 = 3/4 -> operator norm 1/2.
    const Ket phi = Ket::basis(2, 0);
    const Ket psi = superposition(Ket::basis(2, 0), Ket::basis(2, 1),
                                  Complex(std::sqrt(3.0) / 2.0, 0), Complex(0.5, 0));
    const Matrix diff34 = phi.amplitudes() * phi.amplitudes().adjoint() -
                          psi.amplitudes() * psi.amplitudes().adjoint();
    CHECK(operator_norm(HermitianOperator(diff34)) ==
          doctest::Approx(oracle::opnorm2(to_oracle(diff34))).epsilon(1e-12));
    CHECK(operator_norm(HermitianOperator(diff34)) == doctest::Approx(0.5).epsilon(1e-12));

    // Orthogonal kets: trace norm 2.
    const Matrix diff_orth = phi.amplitudes() * phi.amplitudes().adjoint() -
                             Ket::basis(2, 1).amplitudes() *
                                 Ket::basis(2, 1).amplitudes().adjoint();
    CHECK(trace_norm(HermitianOperator(diff_orth)) == doctest::Approx(2.0));

    // |<phi,psi>|^2 = 1/2 -> trace norm sqrt(2).
    const Ket psi_half = superposition(Ket::basis(2, 0), Ket::basis(2, 1),
                                       Complex(1 / std::sqrt(2.0), 0),
                                       Complex(1 / std::sqrt(2.0), 0));
    const Matrix diff_half = phi.amplitudes() * phi.amplitudes().adjoint() -
                             psi_half.amplitudes() * psi_half.amplitudes().adjoint();
    CHECK(trace_norm(HermitianOperator(diff_half)) ==
          doctest::Approx(oracle::trnorm2(to_oracle(diff_half))).epsilon(1e-12));
    CHECK(trace_norm(HermitianOperator(diff_half)) == doctest::Approx(std::sqrt(2.0)));

    for (int i = 0; i < 50; ++i) {
        const HermitianOperator h = random_hermitian(2 + i % 5, mix_seed(12, i));
        CHECK(operator_norm(h) <= trace_norm(h) + 1e-14);
    }

    for (int i = 0; i < 25; ++i) {
        const DensityOperator w = random_density(2 + i % 5, mix_seed(13, i));
        CHECK(trace_norm(w.hermitian()) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(operator_norm(w.hermitian()) <= 1.0 + 1e-12);
    }
}

TEST_CASE("density and effect invariants") {
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 0) = Complex(1.5, 0);
    bad(1, 1) = Complex(-0.5, 0);
    CHECK_THROWS_AS(DensityOperator{bad}, ValidationError);  // negative eigenvalue

    Matrix off_trace = 0.4 * Matrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityOperator{off_trace}, ValidationError);

    CHECK_THROWS_AS(Effect{2.0 * Matrix::Identity(2, 2)}, ValidationError);
    CHECK_NOTHROW(Effect::identity(3));
    CHECK_NOTHROW(Effect::zero(3));
}

TEST_CASE("haar unitary determinism and distribution") {
    const Matrix u1 = random_haar_unitary(1, 5);
    CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-12);

    const Matrix a = random_haar_unitary(2, 42);
    const Matrix b = random_haar_unitary(2, 42);
    const Matrix c = random_haar_unitary(2, 43);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a - c).cwiseAbs().maxCoeff() > 1e-3);

    for (int dim : {2, 3, 5}) {
        const Matrix u = random_haar_unitary(dim, 7);
        CHECK((u.adjoint() * u - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <=
              tolerances().recon_tol);
        for (int k = 0; k < dim; ++k) {
            CHECK(std::abs(u.col(k).norm() - 1.0) <= 1e-12);
        }
    }

    // Left invariance, statistically: E |<e0|U|e0>|^2 = 1/dim, with or
    // without a fixed unitary in front.
    const int n = 4000;
    const Matrix fixed = random_haar_unitary(2, 99);
    double mean_plain = 0.0;
    double mean_rotated = 0.0;
    for (int i = 0; i < n; ++i) {
        const Matrix u = random_haar_unitary(2, mix_seed(21, static_cast<std::uint64_t>(i)));
        mean_plain += std::norm(u(0, 0));
        mean_rotated += std::norm((fixed * u)(0, 0));
    }
    mean_plain /= n;
    mean_rotated /= n;
    CHECK(std::abs(mean_plain - 0.5) < 0.03);
    CHECK(std::abs(mean_rotated - 0.5) < 0.03);
}

TEST_CASE("partial isometry construction") {
    SUBCASE("full space gives the identity") {
        const PartialIsometry v({Ket::basis(3, 0), Ket::basis(3, 1), Ket::basis(3, 2)}, 3);
        CHECK((v.matrix() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
    }

    SUBCASE("half-space annihilates the complement") {
        const PartialIsometry v({Ket::basis(4, 0), Ket::basis(4, 1)}, 2);
        CHECK((v.apply(Ket::basis(4, 0)).amplitudes() - Ket::basis(2, 0).amplitudes()).norm() <
              1e-15);
        CHECK((v.apply(Ket::basis(4, 1)).amplitudes() - Ket::basis(2, 1).amplitudes()).norm() <
              1e-15);
        CHECK(v.apply(Ket::basis(4, 2)).norm() == 0.0);
        CHECK(v.apply(Ket::basis(4, 3)).norm() == 0.0);

        const Matrix proj = v.initial_projection();
        CHECK((proj * Ket::basis(4, 2).amplitudes()).norm() == 0.0);

        // V surjective onto the target: ||V V* x|| = ||x||.
        for (int i = 0; i < 10; ++i) {
            Rng rng = make_rng(mix_seed(31, static_cast<std::uint64_t>(i)));
            std::normal_distribution<double> gauss;
            Vector x(2);
            x << Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng));
            CHECK((v.matrix() * v.matrix().adjoint() * x).norm() ==
                  doctest::Approx(x.norm()).epsilon(1e-12));
        }

        // ||V phi|| = ||proj_K phi|| for arbitrary phi.
        for (int i = 0; i < 10; ++i) {
            Rng rng = make_rng(mix_seed(32, static_cast<std::uint64_t>(i)));
            std::normal_distribution<double> gauss;
            Vector phi(4);
            for (int k = 0; k < 4; ++k) phi(k) = Complex(gauss(rng), gauss(rng));
            CHECK((v.matrix() * phi).norm() == doctest::Approx((proj * phi).norm()).epsilon(1e-12));
        }
    }

    SUBCASE("rejects bad input") {
        CHECK_THROWS_AS(PartialIsometry({Ket::basis(4, 0)}, 2), ValidationError);
        const Ket tilted(Ket::basis(4, 0).amplitudes() + Ket::basis(4, 1).amplitudes());
        CHECK_THROWS_AS(PartialIsometry({tilted, Ket::basis(4, 1)}, 2), ValidationError);
        const PartialIsometry v({Ket::basis(4, 0), Ket::basis(4, 1)}, 2);
        CHECK_THROWS_AS(v.apply(Ket::basis(3, 0)), ValidationError);
    }
}

TEST_CASE("seed mixing is deterministic and spreads") {
    CHECK(mix_seed(1, 2) == mix_seed(1, 2));
    CHECK(mix_seed(1, 2) != mix_seed(1, 3));
    CHECK(mix_seed(1, 2) != mix_seed(2, 2));
}
