#include <doctest.h>

#include <complex>
#include <vector>

#include <nlohmann/json.hpp>

#include "momenta/boundary_unitary.hpp"
#include "momenta/rng.hpp"
#include "oracles.hpp"

using namespace momenta;

namespace {

std::vector<double> sorted_phases(const BoundaryUnitary& v) { return eigendecompose(v).phases; }

void check_phase_multiset(const std::vector<double>& got, const std::vector<double>& expected,
                          double tol) {
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(circular_distance(got[i], expected[i]) <= tol);
    }
}

}  // namespace

TEST_CASE("rotation boundary unitaries") {
    SUBCASE("r=1/2, N=1 has eigenphases {0, 1/2, 1/2}") {
        check_phase_multiset(sorted_phases(make_rotation(0.5, 1)), {0.0, 0.5, 0.5}, 1e-12);
    }
    SUBCASE("r=0 is the identity") {
        const auto v = make_rotation(0.0, 2);
        CHECK((v.matrix() - Eigen::MatrixXcd::Identity(5, 5)).norm() == 0.0);
    }
    SUBCASE("r=1/3, N=1 is diag(e(-1/3), 1, e(1/3)) with phases {0, 1/3, 2/3}") {
        const auto v = make_rotation(1.0 / 3.0, 1);
        CHECK(std::abs(v.matrix()(0, 0) - unit_phase(-1.0 / 3.0)) <= 1e-15);
        CHECK(std::abs(v.matrix()(1, 1) - 1.0) <= 1e-15);
        CHECK(std::abs(v.matrix()(2, 2) - unit_phase(1.0 / 3.0)) <= 1e-15);
        check_phase_multiset(sorted_phases(v), {0.0, 1.0 / 3.0, 2.0 / 3.0}, 1e-12);
    }
    SUBCASE("out-of-range r is reduced mod 1 with a warning flag") {
        const auto v = make_rotation(1.25, 1);
        CHECK(v.reduced_mod_one());
        CHECK((v.matrix() - make_rotation(0.25, 1).matrix()).norm() <= 1e-14);
        CHECK_FALSE(make_rotation(0.25, 1).reduced_mod_one());
    }
}

TEST_CASE("diagonal boundary unitaries") {
    SUBCASE("constant phases give a scalar") {
        const auto v = make_diagonal({0.25, 0.25, 0.25}, 1);
        CHECK((v.matrix() - unit_phase(0.25) * Eigen::MatrixXcd::Identity(3, 3)).norm() <= 1e-15);
        check_phase_multiset(sorted_phases(v), {0.25, 0.25, 0.25}, 1e-12);
    }
    SUBCASE("r_n = <n/2> equals make_rotation(1/2)") {
        const int n = 2;
        std::vector<double> phases;
        for (int m = -n; m <= n; ++m) phases.push_back(frac_mod1(0.5 * m));
        const auto v = make_diagonal(phases, n);
        CHECK((v.matrix() - make_rotation(0.5, n).matrix()).norm() <= 1e-14);
    }
    SUBCASE("distinct phases come back as the eigenphase multiset") {
        const std::vector<double> phases = {0.9, 0.1, 0.45, 0.3, 0.7};
        const auto model = eigendecompose(make_diagonal(phases, 2));
        check_phase_multiset(model.phases, {0.1, 0.3, 0.45, 0.7, 0.9}, 1e-12);
    }
    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(make_diagonal({0.1, 0.2}, 1), ValidationError);
    }
}

TEST_CASE("reflection boundary unitary") {
    SUBCASE("N=0 is the scalar 1") {
        CHECK(std::abs(make_reflection(0).matrix()(0, 0) - 1.0) == 0.0);
    }
    SUBCASE("N=2 has eigenvalue +1 x3 and -1 x2") {
        // oracle: eigendecomposition of the 5x5 swap matrix
        Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(5, 5);
        for (int i = 0; i < 5; ++i) swap(4 - i, i) = 1.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(swap);
        int plus = 0;
        for (int i = 0; i < 5; ++i) {
            if (es.eigenvalues()(i) > 0) ++plus;
        }
        const int minus = 5 - plus;
        CHECK(plus == 3);
        CHECK(minus == 2);

        const auto model = eigendecompose(make_reflection(2));
        CHECK(multiplicity_of_phase(model, 0.0, 1e-10) == 3);
        CHECK(multiplicity_of_phase(model, 0.5, 1e-10) == 2);
    }
    SUBCASE("N=2 reflection matches rotation(1/2) eigenphases") {
        check_phase_multiset(sorted_phases(make_reflection(2)),
                             sorted_phases(make_rotation(0.5, 2)), 1e-12);
    }
}

TEST_CASE("scalar boundary unitaries") {
    CHECK((make_scalar(0.0, 2).matrix() - Eigen::MatrixXcd::Identity(5, 5)).norm() == 0.0);
    CHECK((make_scalar(0.5, 1).matrix() + Eigen::MatrixXcd::Identity(3, 3)).norm() <= 1e-15);
    check_phase_multiset(sorted_phases(make_scalar(0.3, 1)), {0.3, 0.3, 0.3}, 1e-12);
}

TEST_CASE("twisted rotations") {
    SUBCASE("zero twist reduces to the rotation") {
        const auto v = make_twisted_rotation({0.0}, 0.25, 4);
        CHECK((v.matrix() - make_rotation(0.25, 4).matrix()).norm() <= 1e-12);
    }
    SUBCASE("constant twist is a scalar phase") {
        const auto v = make_twisted_rotation({0.3}, 0.0, 2);
        CHECK((v.matrix() - unit_phase(0.3) * Eigen::MatrixXcd::Identity(5, 5)).norm() <= 1e-12);
    }
    SUBCASE("theta = 0.1 cos(2 pi y), r = 1/2, N = 8") {
        const std::vector<std::complex<double>> coeffs = {0.05, 0.0, 0.05};
        const auto v = make_twisted_rotation(coeffs, 0.5, 8);
        CHECK(v.unitarity_defect() <= 1e-10);

        // oracle: dense quadrature of the matrix elements on a 4096 grid,
        // polar-projected the same way the constructor re-unitarizes
        const Eigen::MatrixXcd raw = oracles::twisted_rotation_quadrature(coeffs, 0.5, 8);
        const auto model = eigendecompose(v);
        const auto oracle_model =
            eigendecompose(BoundaryUnitary{FourierTruncation{8}, polar_unitary(raw)});
        check_phase_multiset(model.phases, oracle_model.phases, 1e-9);

        // recorded multiset: this twist has odd Fourier modes only, so it
        // is a gauge transform of the bare half rotation and the phases
        // are exactly {0} x9 and {1/2} x8
        const std::vector<double> recorded = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
                                              0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
        check_phase_multiset(model.phases, recorded, 1e-8);
    }
    SUBCASE("twist degree above the truncation is rejected") {
        const std::vector<std::complex<double>> coeffs = {0.1, 0.0, 0.0, 0.0, 0.1};
        CHECK_THROWS_AS(make_twisted_rotation(coeffs, 0.0, 1), ValidationError);
    }
    SUBCASE("a twist without conjugate symmetry is not a real phase") {
        // theta(y) = 0.1 e(y) has nonzero imaginary part
        const std::vector<std::complex<double>> coeffs = {0.0, 0.0, 0.1};
        CHECK_THROWS_AS(make_twisted_rotation(coeffs, 0.0, 4), ValidationError);
    }
}

TEST_CASE("every constructor satisfies the unitarity bound") {
    CHECK(make_rotation(0.37, 6).unitarity_defect() <= 1e-10);
    CHECK(make_diagonal({0.1, 0.9, 0.4}, 1).unitarity_defect() <= 1e-10);
    CHECK(make_reflection(5).unitarity_defect() <= 1e-10);
    CHECK(make_scalar(0.77, 3).unitarity_defect() <= 1e-10);
    CHECK(make_twisted_rotation({std::complex<double>(0.0, -0.05), 0.0,
                                 std::complex<double>(0.0, 0.05)},
                                0.3, 6)
              .unitarity_defect() <= 1e-10);
}

TEST_CASE("eigendecompose") {
    SUBCASE("rotation r=1/3, N=1: standard basis vectors") {
        const auto model = eigendecompose(make_rotation(1.0 / 3.0, 1));
        check_phase_multiset(model.phases, {0.0, 1.0 / 3.0, 2.0 / 3.0}, 1e-12);
        for (int j = 0; j < 3; ++j) {
            const Eigen::VectorXd col = model.vectors.col(j).cwiseAbs();
            CHECK(col.maxCoeff() == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("identity has all phases 0") {
        const auto model = eigendecompose(make_scalar(0.0, 3));
        for (double p : model.phases) CHECK(p == 0.0);
    }
    SUBCASE("reconstruction residual on a seeded random unitary") {
        Rng rng(42);
        const BoundaryUnitary v{FourierTruncation{4}, random_unitary(9, rng)};
        const auto model = eigendecompose(v);
        CHECK((v.matrix() - reconstruct(model)).norm() <= 1e-9);
        CHECK(model.residual <= 1e-9);
    }
}

TEST_CASE("eigendecompose-reconstruct round trip over seeds") {
    auto verify_round_trip = [](const BoundaryUnitary& v) {
        const int dim = v.dimension();
        const auto model = eigendecompose(v);
        CHECK((v.matrix() - reconstruct(model)).norm() <= 1e-9);
        // orthonormality of the eigenvector frame
        const Eigen::MatrixXcd gram = model.vectors.adjoint() * model.vectors;
        CHECK((gram - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() <= 1e-9);
        for (std::size_t j = 1; j < model.phases.size(); ++j) {
            CHECK(model.phases[j] >= model.phases[j - 1]);
        }
    };
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(seed);
        const int max_mode = static_cast<int>(rng.uniform() * 17.0);
        verify_round_trip(
            BoundaryUnitary{FourierTruncation{max_mode}, random_unitary(2 * max_mode + 1, rng)});
    }
    verify_round_trip(make_rotation(0.37, 7));
    verify_round_trip(make_diagonal({0.9, 0.1, 0.45, 0.3, 0.7}, 2));
    verify_round_trip(make_reflection(6));
    verify_round_trip(make_scalar(0.62, 4));
    verify_round_trip(make_twisted_rotation({std::complex<double>(0.0, -0.04), 0.05,
                                             std::complex<double>(0.0, 0.04)},
                                            0.28, 6));
}

TEST_CASE("unitary equivalence by eigenphase multisets") {
    SUBCASE("reflection vs half rotation at even N") {
        CHECK(are_unitarily_equivalent(make_reflection(2), make_rotation(0.5, 2), 1e-10));
    }
    SUBCASE("reflexive") {
        const auto v = make_rotation(0.123, 3);
        CHECK(are_unitarily_equivalent(v, v, 1e-12));
    }
    SUBCASE("rotation(1/3) vs rotation(1/2) differ") {
        CHECK_FALSE(are_unitarily_equivalent(make_rotation(1.0 / 3.0, 2), make_rotation(0.5, 2),
                                             1e-6));
    }
    SUBCASE("symmetric and invariant under conjugation") {
        Rng rng(9);
        const auto v = make_rotation(0.3, 3);
        const auto u = make_diagonal({0.3, 0.6, 0.9, 0.2, 0.5, 0.8, 0.1}, 3);
        CHECK(are_unitarily_equivalent(u, v, 1e-9) == are_unitarily_equivalent(v, u, 1e-9));
        const Eigen::MatrixXcd w = random_unitary(7, rng);
        const BoundaryUnitary conjugated{FourierTruncation{3},
                                         w.adjoint() * v.matrix() * w};
        CHECK(are_unitarily_equivalent(v, conjugated, 1e-9));
    }
    SUBCASE("dimension mismatch is an error") {
        CHECK_THROWS_AS(
            are_unitarily_equivalent(make_reflection(1), make_reflection(2), 1e-9),
            ValidationError);
    }
    SUBCASE("phases straddling the 0/1 seam still match") {
        // 1 - 5e-11 stays below the snap threshold, so the match has to
        // wrap around the seam
        const auto a = make_diagonal({0.99999999995, 0.25, 0.5}, 1);
        const auto b = make_diagonal({0.00000000005, 0.25, 0.5}, 1);
        CHECK(are_unitarily_equivalent(a, b, 1e-9));
        CHECK_FALSE(are_unitarily_equivalent(a, b, 1e-12));
    }
}

TEST_CASE("multiplicity of an eigenphase") {
    CHECK(multiplicity_of_phase(eigendecompose(make_rotation(0.5, 2)), 0.0, 1e-10) == 3);
    CHECK(multiplicity_of_phase(eigendecompose(make_scalar(0.0, 3)), 0.0, 1e-10) == 7);
    CHECK(multiplicity_of_phase(eigendecompose(make_rotation(1.0 / 3.0, 1)), 0.9, 1e-3) == 0);
}

TEST_CASE("matrix json round trip") {
    Rng rng(21);
    const BoundaryUnitary v{FourierTruncation{3}, random_unitary(7, rng)};
    const auto j = matrix_to_json(v);
    const auto back = matrix_from_json(j);
    CHECK((back.matrix() - v.matrix()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(back.truncation().max_mode == 3);

    nlohmann::json bad = j;
    bad.erase("im");
    CHECK_THROWS_AS(matrix_from_json(bad), ValidationError);
}
