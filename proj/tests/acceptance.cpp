// Acceptance suite: one test case per criterion, each printing a
// [criterion N] PASS/FAIL line. Tolerances are pinned in code.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli_harness.hpp"
#include "momenta/commuting_pairs.hpp"
#include "momenta/fractal_measure.hpp"
#include "momenta/momentum_operator.hpp"
#include "momenta/rng.hpp"
#include "momenta/selfadjoint_extensions.hpp"
#include "oracles.hpp"

using namespace momenta;
using std::complex;

namespace {

struct Criterion {
    int id;
    const char* label;
    bool ok = true;

    Criterion(int id_, const char* label_) : id(id_), label(label_) {}
    void expect(bool cond, const char* what) {
        ok = ok && cond;
        CHECK_MESSAGE(cond, what);
    }
    ~Criterion() {
        std::printf("[criterion %2d] %-58s %s\n", id, label, ok ? "PASS" : "FAIL");
        std::fflush(stdout);
    }
};

std::vector<BoundaryUnitary> all_constructors() {
    std::vector<BoundaryUnitary> list;
    list.push_back(make_rotation(1.0 / 3.0, 2));
    list.push_back(make_diagonal({0.15, 0.4, 0.65, 0.8, 0.05, 0.3, 0.55, 0.9, 0.2}, 4));
    list.push_back(make_reflection(4));
    list.push_back(make_scalar(0.3, 1));
    list.push_back(make_twisted_rotation({std::complex<double>(0.05, 0.0), 0.0,
                                          std::complex<double>(0.05, 0.0)},
                                         0.5, 3));
    return list;
}

GridFunction seeded_band_function(const BoundaryUnitary& v, const IntervalConfig& interval,
                                  int grid, int m_max, std::uint64_t seed) {
    Rng rng(seed);
    return oracles::synth_band_function(eigendecompose(v), interval, grid, m_max, rng);
}

double rel_error(const GridFunction& got, const GridFunction& want) {
    GridFunction diff = got;
    diff.values -= want.values;
    const double ref = want.norm();
    return ref > 0 ? diff.norm() / ref : diff.norm();
}

}  // namespace

TEST_CASE("criterion 1: unitary group laws") {
    Criterion c{1, "unitary group laws (unitarity + composition)"};
    const IntervalConfig interval{0.0, 1.0};
    const int grid = 128;
    std::uint64_t seed = 500;
    for (const auto& v : all_constructors()) {
        if (v.truncation().max_mode > 4) continue;
        const GridFunction f = seeded_band_function(v, interval, grid, 2, seed++);
        const double h = interval.length() / grid;
        for (const auto& [ka, kb] : std::vector<std::pair<int, int>>{
                 {1, 5}, {37, 91}, {-13, 64}, {128, 200}, {-301, 3}}) {
            const double a = ka * h, b = kb * h;
            c.expect(std::abs(evolve(a, v, f).norm() - f.norm()) <= 1e-12 * f.norm(),
                     "evolution preserves the discrete norm");
            GridFunction lhs = evolve(a, v, evolve(b, v, f));
            lhs.values -= evolve(a + b, v, f).values;
            c.expect(lhs.values.cwiseAbs().maxCoeff() <= 1e-12, "group law at grid multiples");
        }
    }
}

TEST_CASE("criterion 2: period identity") {
    Criterion c{2, "period identity e(L P_V) = I (x) V"};
    const IntervalConfig interval{0.0, 1.0};
    std::uint64_t seed = 700;
    for (const auto& v : all_constructors()) {
        const GridFunction f = seeded_band_function(v, interval, 128, 2, seed++);
        const GridFunction out = evolve(interval.length(), v, f);
        GridFunction expected = zero_like(f);
        for (int i = 0; i < f.grid_size(); ++i) {
            expected.values.row(i) = (v.matrix() * f.values.row(i).transpose()).transpose();
        }
        GridFunction diff = out;
        diff.values -= expected.values;
        c.expect(diff.values.cwiseAbs().maxCoeff() <= 1e-12,
                 "evolve(L) equals sample-wise V for every constructor");
    }
}

TEST_CASE("criterion 3: eigenvalue correspondence") {
    Criterion c{3, "eigenvalue correspondence and eigenfunction residuals"};
    const IntervalConfig interval{0.0, 1.0};
    for (double r : {0.0, 0.5, 1.0 / 3.0, std::sqrt(2.0) - 1.0}) {
        const auto v = make_rotation(r, 2);
        const auto model = eigendecompose(v);
        const auto sp = spectrum(model, interval, 0, 0);
        std::vector<double> phases;
        for (const auto& p : sp.points) {
            for (int k = 0; k < p.multiplicity; ++k) phases.push_back(frac_mod1(p.value));
        }
        c.expect(phases.size() == model.phases.size(), "one band covers the whole multiset");
        for (std::size_t i = 0; i < phases.size(); ++i) {
            c.expect(circular_distance(phases[i], model.phases[i]) <= 1e-10,
                     "e(L lambda) reproduces V's eigenvalue multiset");
        }
        for (int j = 0; j < model.dimension(); ++j) {
            const double lambda = model.phases[static_cast<std::size_t>(j)];
            const GridFunction f =
                eigenfunction(lambda, model.vectors.col(j), v, interval, 256);
            const Eigen::MatrixXcd deriv =
                oracles::fd4_momentum_derivative(f.values, f.step());
            const double residual =
                std::sqrt(f.step() * (deriv - lambda * f.values).squaredNorm()) / f.norm();
            c.expect(residual <= 1e-6, "finite-difference derivative residual");
        }
    }
}

TEST_CASE("criterion 4: unitary equivalence criterion") {
    Criterion c{4, "reflection ~ half rotation at even N; 1/3 vs 1/2 differ"};
    for (int n : {2, 4, 8}) {
        c.expect(are_unitarily_equivalent(make_reflection(n), make_rotation(0.5, n), 1e-10),
                 "reflection equivalent to half translation at even N");
    }
    c.expect(!are_unitarily_equivalent(make_rotation(1.0 / 3.0, 2), make_rotation(0.5, 2), 1e-6),
             "rotation(1/3) inequivalent to rotation(1/2)");
}

TEST_CASE("criterion 5: resolvent cross-validation") {
    Criterion c{5, "Green's function vs eigen-expansion resolvent"};
    const IntervalConfig interval{0.0, 1.0};
    const auto v = make_diagonal(
        {0.15, 0.4, 0.65, 0.8, 0.05, 0.3, 0.55, 0.9, 0.2, 0.45, 0.7, 0.95, 0.1, 0.35, 0.6,
         0.85, 0.25},
        8);
    const auto model = eigendecompose(v);
    const GridFunction f = seeded_band_function(v, interval, 512, 3, 901);
    for (const complex<double> z : {complex<double>(0.0, 1.0), complex<double>(0.5, 0.1),
                                    complex<double>(-1.0, 0.25)}) {
        const GridFunction greens = resolvent_greens(z, v, f);
        const auto spectral = resolvent_spectral(z, model, f, 64);
        c.expect(rel_error(greens, spectral.value) <= 1e-7,
                 "routes agree within 1e-7 relative L2 error");
    }
    Rng rng(902);
    for (int trial = 0; trial < 20; ++trial) {
        const int max_mode = 1 + static_cast<int>(rng.uniform() * 3.0);
        const BoundaryUnitary w{FourierTruncation{max_mode},
                                random_unitary(2 * max_mode + 1, rng)};
        const complex<double> z(2.0 * rng.uniform() - 1.0, 0.05 + rng.uniform());
        const auto [c1, c2] = greens_branch_coefficients(z, w, interval);
        const Eigen::MatrixXcd jump =
            c2 - c1 +
            complex<double>(0.0, two_pi) * Eigen::MatrixXcd::Identity(w.dimension(),
                                                                      w.dimension());
        c.expect(jump.cwiseAbs().maxCoeff() <= 1e-12, "branch coefficient jump c2 - c1 = -i2pi");
    }
}

TEST_CASE("criterion 6: first resolvent identity") {
    Criterion c{6, "R(z) - R(w) = (w - z) R(z) R(w)"};
    const IntervalConfig interval{0.0, 1.0};
    const auto v = make_diagonal({0.15, 0.4, 0.65, 0.8, 0.05}, 2);
    const GridFunction f = seeded_band_function(v, interval, 256, 2, 903);
    const std::vector<std::pair<complex<double>, complex<double>>> pairs = {
        {{0.3, 0.8}, {-0.4, -0.6}}, {{0.0, 1.0}, {0.5, 0.1}}, {{-1.0, 0.25}, {0.2, 0.5}}};
    for (const auto& [z, w] : pairs) {
        GridFunction lhs = resolvent_greens(z, v, f);
        lhs.values -= resolvent_greens(w, v, f).values;
        GridFunction rhs = resolvent_greens(z, v, resolvent_greens(w, v, f));
        rhs.values *= (w - z);
        c.expect(rel_error(lhs, rhs) <= 1e-7, "first resolvent identity on random f");
    }
}

TEST_CASE("criterion 7: Stone's formula convergence") {
    Criterion c{7, "Stone approximant converges to the projection"};
    const IntervalConfig interval{0.0, 1.0};
    const auto v = make_diagonal({0.25, 0.7, 0.25}, 1);
    const auto model = eigendecompose(v);
    const GridFunction f = seeded_band_function(v, interval, 64, 1, 905);
    const GridFunction exact = spectral_projection(-0.5, 0.5, model, interval).apply(f);
    double previous = std::numeric_limits<double>::max();
    for (double b : {1e-1, 1e-2, 1e-3}) {
        const auto stone = stone_projection(-0.5, 0.5, v, b, f, 1500);
        const double err = rel_error(stone.value, exact);
        c.expect(err < previous, "error decreases monotonically in b");
        previous = err;
    }
    c.expect(previous <= 0.05, "error at b = 1e-3 at most 5 percent");
}

TEST_CASE("criterion 8: projection algebra") {
    Criterion c{8, "projections idempotent, selfadjoint, orthogonal"};
    const IntervalConfig interval{0.0, 1.0};
    const auto v = make_diagonal({0.25, 0.7, 0.4, 0.9, 0.55}, 2);
    const auto model = eigendecompose(v);
    const GridFunction f = seeded_band_function(v, interval, 128, 2, 907);
    const GridFunction g = seeded_band_function(v, interval, 128, 2, 908);
    const auto p1 = spectral_projection(-0.5, 0.5, model, interval);
    const auto p2 = spectral_projection(0.5, 1.5, model, interval);

    const GridFunction p1f = p1.apply(f);
    c.expect(rel_error(p1.apply(p1f), p1f) <= 1e-10, "idempotence");
    const complex<double> lhs = inner(g, p1f);
    const complex<double> rhs = inner(p1.apply(g), f);
    c.expect(std::abs(lhs - rhs) <= 1e-10 * f.norm() * g.norm(), "selfadjointness");
    c.expect(p2.apply(p1f).norm() <= 1e-10 * f.norm(), "orthogonality on disjoint intervals");
}

TEST_CASE("criterion 9: shift and ladder structure") {
    Criterion c{9, "band point sets coincide after integer shifts"};
    const IntervalConfig interval{0.0, 1.0};
    for (const auto& v : all_constructors()) {
        const auto sp = spectrum(eigendecompose(v), interval, -3, 3);
        const auto bands = band_partition(sp);
        const BandPointSet* base = nullptr;
        for (const auto& band : bands) {
            if (band.band == 0) base = &band;
        }
        c.expect(base != nullptr, "band 0 present");
        if (base == nullptr) continue;
        for (const auto& band : bands) {
            c.expect(band.points.size() == base->points.size(), "band sizes match");
            if (band.points.size() != base->points.size()) continue;
            for (std::size_t i = 0; i < band.points.size(); ++i) {
                c.expect(std::abs(band.points[i].value - band.band -
                                  base->points[i].value) <= 1e-10,
                         "shifted band equals band 0");
                c.expect(band.points[i].multiplicity == base->points[i].multiplicity,
                         "multiplicities match");
            }
        }
    }
}

TEST_CASE("criterion 10: square commuting classification") {
    Criterion c{10, "square pairs: read-back, rejection, tiling"};
    // exact read-back of (alpha, beta_m)
    const std::vector<double> betas = {0.15, 0.4, 0.65, 0.8, 0.05, 0.3, 0.55};
    const auto spec =
        check_commuting_square(make_scalar(0.3, 3), make_diagonal(betas, 3), 1e-10);
    c.expect(spec.has_value(), "scalar (x) diagonal accepted");
    if (spec) {
        c.expect(std::abs(spec->alpha - 0.3) <= 1e-12, "alpha read back exactly");
        for (int m = -3; m <= 3; ++m) {
            c.expect(std::abs(spec->beta_of_mode(m) -
                              betas[static_cast<std::size_t>(m + 3)]) <= 1e-12,
                     "beta_m read back exactly");
        }
    }
    c.expect(
        !check_commuting_square(make_rotation(0.3, 2), make_rotation(0.45, 2), 1e-10).has_value(),
        "both-non-scalar pair rejected");

    // joint spectrum enumerates the lattice of eq (5.8)
    if (spec) {
        const auto sp = joint_spectrum_square(*spec, -1, 1, 0, 1);
        c.expect(sp.points.size() == 6, "3 modes x 2 bands enumerate exactly");
        for (const auto& p : sp.points) {
            const int m = static_cast<int>(std::floor(p[0]));  // alpha + m with alpha in (0,1)
            c.expect(std::abs(p[0] - (spec->alpha + m)) <= 1e-12, "x coordinate is alpha + m");
            const double bm = spec->beta_of_mode(m);
            const double frac = p[1] - std::floor(p[1]);
            c.expect(std::abs(frac - bm) <= 1e-12 || std::abs(frac - bm + 1.0) <= 1e-12,
                     "y coordinate is beta_m + n");
        }
        // mirrored case transposes
        auto mirrored = *spec;
        mirrored.case_tag = SquareCase::v_scalar;
        const auto sp2 = joint_spectrum_square(mirrored, 0, 1, -1, 1);
        c.expect(sp2.points.size() == 6, "case (5.9) enumerates exactly");
        for (const auto& p : sp2.points) {
            const int n = static_cast<int>(std::floor(p[1]));
            c.expect(std::abs(p[1] - (mirrored.alpha + n)) <= 1e-12,
                     "y coordinate is alpha + n in the mirrored case");
        }
    }

    for (double r : {0.0, 0.5, 1.0 / 3.0}) {
        CommutingPairSpec geo;
        geo.case_tag = SquareCase::u_scalar;
        geo.alpha = 0.0;
        geo.max_mode = 5;
        for (int m = -5; m <= 5; ++m) geo.beta.push_back(frac_mod1(r * m));
        const auto sp = joint_spectrum_square(geo, -1, 4, -2, 4);
        const auto report = tiling_check(sp, {0.25, 3.75, 0.25, 3.75});
        c.expect(report.is_tiling && report.min_cover == 1 && report.max_cover == 1,
                 "geometric joint spectrum tiles with uniform cover 1");
    }
}

TEST_CASE("criterion 11: strip classification") {
    Criterion c{11, "strip: gamma read-back, shift rejection, point law"};
    std::vector<double> freqs;
    for (int k = 0; k < 9; ++k) freqs.push_back(-2.0 + 0.5 * k);
    const auto n = static_cast<int>(freqs.size());

    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(n, n);
    std::vector<double> gamma_in;
    for (int k = 0; k < n; ++k) {
        // dyadic phases so that gamma + m - m is exact in double precision
        const double g = std::floor(frac_mod1(0.37 * k * k) * 1048576.0) / 1048576.0;
        gamma_in.push_back(g);
        diag(k, k) = unit_phase(g);
    }
    const auto gamma = check_commuting_strip(diag, freqs, 1e-10);
    c.expect(gamma.has_value(), "diagonal multiplier accepted");
    if (gamma) {
        for (int k = 0; k < n; ++k) {
            c.expect(circular_distance(gamma->values[static_cast<std::size_t>(k)],
                                       gamma_in[static_cast<std::size_t>(k)]) <= 1e-12,
                     "gamma read back");
        }
        const auto sp = joint_spectrum_strip(*gamma, -3, 3);
        for (const auto& p : sp.points) {
            const auto it =
                std::find(gamma->freqs.begin(), gamma->freqs.end(), p[1]) -
                gamma->freqs.begin();
            const double expected = gamma->values[static_cast<std::size_t>(it)];
            c.expect(frac_mod1(p[0]) == expected, "x mod 1 equals gamma(y) exactly");
        }
    }
    Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) shift(k + 1, k) = 1.0;
    shift(0, n - 1) = 1.0;
    c.expect(!check_commuting_strip(shift, freqs, 1e-10).has_value(),
             "frequency shift rejected");
}

TEST_CASE("criterion 12: Cantor-4 spectral pair") {
    Criterion c{12, "Cantor measure: lambda set, transform, Gram"};
    c.expect(lambda_set(2).values == std::vector<std::int64_t>{0, 1, 4, 5},
             "lambda_set(2) = {0,1,4,5}");
    for (double t : {1.0, 2.0, 5.0}) {
        c.expect(std::abs(cantor_fourier(t, 40) - oracles::cantor_midpoint_transform(t, 12)) <=
                     1e-6,
                 "product formula matches the level-12 midpoint oracle");
    }
    for (int n = 1; n <= 6; ++n) {
        c.expect(gram_matrix(lambda_set(n), 40).max_defect <= 1e-8,
                 "Gram defect at most 1e-8 through level 6");
    }
    Rng rng(911);
    const auto set = lambda_set(3);
    std::vector<double> gamma;
    for (std::size_t i = 0; i < set.values.size(); ++i) gamma.push_back(rng.uniform());
    c.expect(joint_gram_defect(gamma, set, 0, 1, 40) <= 1e-8,
             "joint Gram over Lambda_gamma at most 1e-8");
}

TEST_CASE("criterion 13: selfadjoint extension machinery") {
    Criterion c{13, "deficiency vectors, Cayley maps, domain check"};
    const IntervalConfig interval{0.0, 1.0};
    Eigen::VectorXcd h(3);
    h << std::complex<double>(0.3, -0.4), std::complex<double>(0.0, 1.2), 0.5;
    for (auto sign : {DeficiencySign::plus, DeficiencySign::minus}) {
        const auto d = deficiency_vector(sign, h, interval, 512);
        c.expect(d.residual <= 1e-6, "deficiency residual at most 1e-6");
        const double expected =
            (std::exp(4.0 * M_PI * interval.length()) - 1.0) * h.squaredNorm();
        c.expect(std::abs(4.0 * M_PI * d.norm_squared - expected) <= 1e-8 * expected,
                 "norm identity within 1e-8 relative");
    }
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Rng rng(seed);
        const int max_mode = static_cast<int>(rng.uniform() * 9.0);
        const BoundaryUnitary vb{FourierTruncation{max_mode},
                                 random_unitary(2 * max_mode + 1, rng)};
        const auto back = cayley_vn_to_boundary(cayley_boundary_to_vn(vb, interval), interval);
        c.expect((back.matrix() - vb.matrix()).cwiseAbs().maxCoeff() <= 1e-10,
                 "Cayley round trip within 1e-10");
    }
    const auto v = make_diagonal({0.2, 0.45, 0.8}, 1);
    const auto model = eigendecompose(v);
    for (int j = 0; j < 3; ++j) {
        for (int m : {-1, 0, 1}) {
            const double lambda = model.phases[static_cast<std::size_t>(j)] + m;
            const GridFunction f =
                eigenfunction(lambda, model.vectors.col(j), v, interval, 256);
            c.expect(domain_check(f, v, 1e-8), "eigenfunctions accepted");
        }
    }
    GridFunction off;
    off.interval = interval;
    off.truncation = v.truncation();
    off.values.resize(256, 3);
    for (int i = 0; i < 256; ++i) {
        off.values.row(i).setZero();
        off.values(i, 0) = oracles::e2pi(0.61 * off.node(i));
    }
    c.expect(!domain_check(off, v, 1e-8), "mismatched phase rejected");
}

TEST_CASE("criterion 14: CLI determinism and schemas") {
    Criterion c{14, "CLI byte-determinism and schema validity"};
    const std::vector<std::string> repeats = {
        "spectrum --boundary rotation:r=0.5 --N 2 --bands -2 2",
        "tiling --spec geometric --r 0.5 --window 0.25 3.75",
        "cantor-gram --level 4 --depth 40 --seed 42",
        "resolvent --z 0.5 0.25 --boundary diagonal:phases=0.2,0.5,0.8 --N 1 --G 64 "
        "--eigen-index 1 --band 0 --seed 42",
    };
    for (const auto& cmd : repeats) {
        const auto a = cli::run(cmd);
        const auto b = cli::run(cmd);
        c.expect(a.exit_code == 0, "command succeeds");
        c.expect(a.output == b.output, "repeated runs byte-identical");
    }
    const std::vector<std::pair<std::string, std::string>> schema_cases = {
        {"spectrum --boundary rotation:r=0.25 --N 1 --bands -1 1 --format json",
         "spectrum.schema.json"},
        {"tiling --spec geometric --r 0.5 --window 0.25 3.75", "tiling_report.schema.json"},
        {"commute-square --u scalar:theta=0.3 --v diagonal:phases=0.1,0.6,0.9 --N 1",
         "commute_square.schema.json"},
        {"cantor-gram --level 3 --depth 40", "gram_report.schema.json"},
        {"deficiency --sign minus --N 1 --G 128", "deficiency.schema.json"},
    };
    for (const auto& [cmd, schema] : schema_cases) {
        const auto run = cli::run(cmd);
        c.expect(run.exit_code == 0, "command succeeds");
        const auto parsed = nlohmann::json::parse(run.output, nullptr, false);
        c.expect(!parsed.is_discarded(), "output parses as json");
        if (!parsed.is_discarded()) {
            c.expect(cli::validate_schema(parsed, schema), "output validates against schema");
        }
    }
}
