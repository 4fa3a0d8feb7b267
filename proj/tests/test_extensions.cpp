#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mbred/extensions.hpp"
#include "oracles.hpp"

using namespace mbred;

namespace {

PurePoint basis_point(int dim, int k) { return pure_from_ket(Ket::basis(dim, k)); }

Matrix pauli_x() {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = Complex(1, 0);
    x(1, 0) = Complex(1, 0);
    return x;
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    return trace_norm(HermitianOperator(a.matrix() - b.matrix()));
}

// phi = (e_a + e_b)/sqrt(2) in dimension dim.
PurePoint superposition_point(int dim, int a, int b) {
    Vector v = Vector::Zero(dim);
    v(a) = Complex(1, 0);
    v(b) = Complex(1, 0);
    return pure_from_ket(Ket(v));
}

LabelMeasure uniform_on(const std::vector<std::string>& labels) {
    std::vector<LabelMeasure::Entry> entries;
    for (const auto& l : labels) {
        entries.push_back({l, 1.0 / static_cast<double>(labels.size())});
    }
    return LabelMeasure(entries);
}

}  // namespace

TEST_CASE("classical extension bookkeeping") {
    const auto probes = sample_haar_pure(2, 3, 5);
    const ClassicalExtension ext = example1(Matrix::Identity(2, 2), probes);
    CHECK(ext.sample_points().size() == 3);
    CHECK(ext.target_dim() == 2);
    CHECK(ext.has_point("P0"));
    CHECK_FALSE(ext.has_point("missing"));
    CHECK_THROWS_AS(ext.state_of("missing"), ValidationError);

    CHECK_THROWS_AS(ClassicalExtension({"a", "a"},
                                       {ext.state_of("P0"), ext.state_of("P1")}, 2, ""),
                    ValidationError);
    CHECK_THROWS_AS(ClassicalExtension({"a"}, {}, 2, ""), ValidationError);
}

TEST_CASE("reduce_extension") {
    const auto probes = std::vector<PurePoint>{basis_point(2, 0), basis_point(2, 1)};
    const ClassicalExtension ext = example1(Matrix::Identity(2, 2), probes);

    // Dirac in, assigned state out.
    CHECK(trace_distance(reduce_extension(ext, dirac(std::string("P0"))), ext.state_of("P0")) ==
          0.0);

    // Uniform mixture of two orthogonal pure states: the maximally mixed block.
    const DensityOperator half = reduce_extension(ext, uniform_on({"P0", "P1"}));
    CHECK((half.matrix() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(reduce_extension(ext, dirac(std::string("nope"))), ValidationError);
}

TEST_CASE("example1 conjugates by the unitary") {
    // Pauli X sends P_{e1} to P_{e2}; oracle by direct 2x2 arithmetic.
    const ClassicalExtension flipped = example1(pauli_x(), {basis_point(2, 0)});
    const oracle::Mat2 expected = oracle::outer2({Complex(0, 0), Complex(1, 0)});
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(std::abs(flipped.state_of("P0").matrix()(i, j) - expected[i][j]) < 1e-14);
        }
    }

    // Any mu reduces to U (barycenter) U*.
    const Matrix u = random_haar_unitary(3, 7);
    const auto probes = sample_haar_pure(3, 5, 8);
    const ClassicalExtension ext = example1(u, probes);
    const LabelMeasure mu = uniform_on({"P0", "P2", "P4"});
    Matrix barycenter = Matrix::Zero(3, 3);
    for (int k : {0, 2, 4}) {
        barycenter += probes[static_cast<std::size_t>(k)].projector() / 3.0;
    }
    const Matrix expected_state = u * barycenter * u.adjoint();
    CHECK((reduce_extension(ext, mu).matrix() - expected_state).cwiseAbs().maxCoeff() <= 1e-14);

    // All assigned states are pure, so the pure sector is everything.
    CHECK(extract_omega_tilde(ext).size() == ext.sample_points().size());

    CHECK_THROWS_AS(example1(2.0 * Matrix::Identity(2, 2), probes), ValidationError);
    CHECK_THROWS_AS(example1(Matrix::Identity(2, 2), {}), ValidationError);
}

TEST_CASE("index map") {
    SUBCASE("identity extension indexes itself") {
        const auto probes = sample_haar_pure(2, 4, 9);
        const ClassicalExtension ext = example1(Matrix::Identity(2, 2), probes);
        const auto i_map = index_map(ext);
        for (std::size_t k = 0; k < probes.size(); ++k) {
            REQUIRE(i_map.at(probe_label(k)).approx_equal(probes[k]));
        }
    }

    SUBCASE("similarity extension conjugates") {
        const Matrix u = random_haar_unitary(2, 10);
        const auto probes = sample_haar_pure(2, 4, 11);
        const ClassicalExtension ext = example1(u, probes);
        const auto i_map = index_map(ext);
        for (std::size_t k = 0; k < probes.size(); ++k) {
            const PurePoint expected =
                pure_from_ket(Ket(u * probes[k].representative().amplitudes()));
            REQUIRE(i_map.at(probe_label(k)).approx_equal(expected));
        }
    }
}

TEST_CASE("example2 is partially two-to-one") {
    const auto probes = sample_haar_pure(2, 4, 12);

    SUBCASE("identity unitary duplicates every point") {
        const ClassicalExtension ext = example2(Matrix::Identity(2, 2), probes);
        CHECK(ext.sample_points().size() == 8);
        CHECK(extract_omega_tilde(ext).size() == 8);
        const auto i_map = index_map(ext);
        for (std::size_t k = 0; k < probes.size(); ++k) {
            REQUIRE(i_map.at("copy1:" + probe_label(k))
                        .approx_equal(i_map.at("copy2:" + probe_label(k))));
        }
    }

    SUBCASE("generic unitary pairs P with U*PU") {
        const Matrix u = random_haar_unitary(2, 13);
        // Add the partner point U* P0 U so the fiber over P0 has two elements.
        std::vector<PurePoint> extended = probes;
        extended.push_back(
            pure_from_ket(Ket(u.adjoint() * probes[0].representative().amplitudes())));
        const ClassicalExtension ext = example2(u, extended);
        const auto i_map = index_map(ext);
        REQUIRE(i_map.at("copy1:" + probe_label(0))
                    .approx_equal(i_map.at("copy2:" + probe_label(extended.size() - 1))));

        // The paired Dirac mixture reduces to the shared pure image, and all
        // its mass sits in the fiber (the quantitative Dirac-fiber statement).
        const LabelMeasure paired = mix(
            0.5, dirac(std::string("copy1:") + probe_label(0)),
            dirac(std::string("copy2:") + probe_label(extended.size() - 1)));
        const DensityOperator w = reduce_extension(ext, paired);
        REQUIRE(purity(w) >= 1.0 - tolerances().purity_tol);
        const PurePoint image = as_pure_point(w);
        double fiber_weight = 0.0;
        for (const auto& e : paired.support()) {
            const double overlap =
                (ext.state_of(e.point).matrix() * image.projector()).trace().real();
            if (overlap >= 1.0 - tolerances().point_eq_tol) fiber_weight += e.weight;
        }
        REQUIRE(fiber_weight == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("example3 splits the source space") {
    // Source dim 4, K = span(e0, e1), target dim 2.
    std::vector<PurePoint> probes;
    probes.push_back(basis_point(4, 0));                 // phi = e1: pure image
    probes.push_back(superposition_point(4, 0, 2));     // phi = (e1+e3)/sqrt2: parallel images
    probes.push_back(superposition_point(4, 0, 3));     // phi = (e1+e4)/sqrt2: genuinely mixed
    const ClassicalExtension ext = example3(4, probes);

    SUBCASE("constructed states match hand arithmetic") {
        // phi = e1 -> P_{f1}.
        const oracle::Mat2 pf1 = oracle::outer2({Complex(1, 0), Complex(0, 0)});
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                CHECK(std::abs(ext.state_of("P0").matrix()(i, j) - pf1[i][j]) < 1e-14);
            }
        }
        CHECK(purity(ext.state_of("P0")) == doctest::Approx(1.0));

        // phi = (e1+e3)/sqrt2: V1 phi = f1/sqrt2 = V2 phi, still P_{f1}.
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                CHECK(std::abs(ext.state_of("P1").matrix()(i, j) - pf1[i][j]) < 1e-14);
            }
        }
        CHECK(purity(ext.state_of("P1")) == doctest::Approx(1.0));

        // phi = (e1+e4)/sqrt2 -> (P_{f1} + P_{f2})/2, purity 1/2.
        const oracle::Mat2 mixed = oracle::scale2(
            0.5, oracle::add2(pf1, oracle::outer2({Complex(0, 0), Complex(1, 0)})));
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                CHECK(std::abs(ext.state_of("P2").matrix()(i, j) - mixed[i][j]) < 1e-14);
            }
        }
        CHECK(purity(ext.state_of("P2")) == doctest::Approx(0.5));
    }

    SUBCASE("pure sector excludes the mixed point") {
        const auto tilde = extract_omega_tilde(ext);
        CHECK(std::count(tilde.begin(), tilde.end(), "P0") == 1);
        CHECK(std::count(tilde.begin(), tilde.end(), "P1") == 1);
        CHECK(std::count(tilde.begin(), tilde.end(), "P2") == 0);

        const auto i_map = index_map(ext);
        CHECK(i_map.count("P2") == 0);
        CHECK(i_map.at("P0").approx_equal(basis_point(2, 0)));
    }

    CHECK_THROWS_AS(example3(3, probes), ValidationError);
    CHECK_THROWS_AS(example3(4, std::vector<PurePoint>{}), ValidationError);
}

TEST_CASE("representation identity") {
    SUBCASE("single Dirac measures are exact") {
        const auto probes = sample_haar_pure(3, 4, 20);
        const ClassicalExtension ext = example1(random_haar_unitary(3, 21), probes);
        for (const std::string& omega : extract_omega_tilde(ext)) {
            const auto check = verify_representation(ext, dirac(omega));
            REQUIRE(check.pass);
            REQUIRE(check.trace_distance <= 1e-12);
        }
    }

    SUBCASE("example2 with copy-mixing measures") {
        const Matrix u = random_haar_unitary(2, 22);
        const auto probes = sample_haar_pure(2, 4, 23);
        const ClassicalExtension ext = example2(u, probes);
        const LabelMeasure mu = uniform_on(
            {"copy1:P0", "copy1:P1", "copy2:P0", "copy2:P2"});
        const auto check = verify_representation(ext, mu);
        CHECK(check.pass);
        CHECK(check.trace_distance <= 1e-12);
    }

    SUBCASE("support outside the pure sector is rejected") {
        std::vector<PurePoint> probes{superposition_point(4, 0, 3)};  // mixed image
        const ClassicalExtension ext = example3(4, probes);
        CHECK_THROWS_AS(verify_representation(ext, dirac(std::string("P0"))), ValidationError);
    }

    SUBCASE("random measures over all three constructions") {
        Rng rng = make_rng(24);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int example = 1; example <= 3; ++example) {
            const int dim = (example == 3) ? 4 : 3;
            std::vector<PurePoint> probes = sample_haar_pure(dim, 6, mix_seed(25, example));
            if (example == 3) {
                // seed the pure sector: two K-points and their complements
                probes.push_back(basis_point(4, 0));
                probes.push_back(basis_point(4, 2));
                probes.push_back(superposition_point(4, 1, 3));
            }
            const ClassicalExtension ext =
                (example == 1)   ? example1(random_haar_unitary(dim, 26), probes)
                : (example == 2) ? example2(random_haar_unitary(dim, 27), probes)
                                 : example3(dim, probes);
            const auto tilde = extract_omega_tilde(ext);
            REQUIRE(!tilde.empty());
            for (int i = 0; i < 30; ++i) {
                std::vector<LabelMeasure::Entry> entries;
                double total = 0.0;
                for (const auto& omega : tilde) {
                    const double w = unit(rng);
                    entries.push_back({omega, w});
                    total += w;
                }
                for (auto& e : entries) e.weight /= total;
                const auto check = verify_representation(ext, LabelMeasure(entries));
                REQUIRE(check.pass);
                REQUIRE(check.trace_distance <= 1e-10);
            }
        }
    }
}

TEST_CASE("reduction of an extension is affine in the measure") {
    const auto probes = sample_haar_pure(2, 5, 30);
    const ClassicalExtension ext = example2(random_haar_unitary(2, 31), probes);
    Rng rng = make_rng(32);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const LabelMeasure mu = uniform_on({"copy1:P0", "copy2:P3"});
        const LabelMeasure nu = uniform_on({"copy1:P1", "copy1:P2", "copy2:P4"});
        const double alpha = unit(rng);
        const Matrix mixed = reduce_extension(ext, mix(alpha, mu, nu)).matrix();
        const Matrix split = alpha * reduce_extension(ext, mu).matrix() +
                             (1.0 - alpha) * reduce_extension(ext, nu).matrix();
        REQUIRE((mixed - split).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
