// momenta: command-line front end for the momentum-operator toolkit.
// Every subcommand emits deterministic JSON or CSV suitable for plotting.
#include <cmath>
#include <cstdlib>
#include <limits>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "momenta/commuting_pairs.hpp"
#include "momenta/fractal_measure.hpp"
#include "momenta/io.hpp"
#include "momenta/momentum_operator.hpp"
#include "momenta/selfadjoint_extensions.hpp"

using json = nlohmann::json;
using namespace momenta;

namespace {

struct RunConfig {
    int max_mode = 2;
    int grid = 128;
    int m_lo = -2;
    int m_hi = 2;
    double tol = 1e-9;
    std::uint64_t seed = 42;
    std::string out;
    std::string format;  // "json" or "csv"; empty means subcommand default
    int threads = 1;
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed json in " + path + ": " + e.what());
    }
    return j;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + cfg.out);
    out << text;
}

void emit_json(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ValidationError("cannot parse number: " + item);
        }
    }
    return values;
}

/// Inline boundary spec, e.g. "rotation:r=0.5", "diagonal:phases=0.1,0.2,0.3",
/// "scalar:theta=0.3", "reflection", "twisted:r=0.5,coeffs=0.05,0,0.05".
BoundaryUnitary parse_boundary_spec(const std::string& spec, int max_mode) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::map<std::string, std::string> args;
    if (colon != std::string::npos) {
        // key=value pairs; the last value may itself contain commas (lists)
        std::string rest = spec.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            const auto eq = rest.find('=', pos);
            if (eq == std::string::npos) throw ValidationError("boundary spec: expected key=value");
            const std::string key = rest.substr(pos, eq - pos);
            auto next_key_eq = rest.find('=', eq + 1);
            std::size_t value_end = rest.size();
            if (next_key_eq != std::string::npos) {
                const auto comma = rest.rfind(',', next_key_eq);
                if (comma != std::string::npos && comma > eq) value_end = comma;
            }
            args[key] = rest.substr(eq + 1, value_end - eq - 1);
            pos = value_end == rest.size() ? value_end : value_end + 1;
        }
    }
    auto need = [&](const char* key) {
        auto it = args.find(key);
        if (it == args.end()) {
            throw ValidationError(std::string("boundary spec '") + kind + "' needs " + key);
        }
        std::string value = it->second;
        args.erase(it);
        return value;
    };
    auto done = [&]() {
        if (!args.empty()) {
            throw ValidationError("boundary spec '" + kind + "' does not take '" +
                                  args.begin()->first + "'");
        }
    };
    BoundaryUnitary result = [&]() {
        if (kind == "rotation") return make_rotation(std::stod(need("r")), max_mode);
        if (kind == "scalar") return make_scalar(std::stod(need("theta")), max_mode);
        if (kind == "reflection") return make_reflection(max_mode);
        if (kind == "diagonal") return make_diagonal(parse_double_list(need("phases")), max_mode);
        if (kind == "twisted") {
            const auto reals = parse_double_list(need("coeffs"));
            std::vector<std::complex<double>> coeffs(reals.begin(), reals.end());
            return make_twisted_rotation(coeffs, std::stod(need("r")), max_mode);
        }
        throw ValidationError("unknown boundary spec kind: " + kind);
    }();
    done();
    return result;
}

BoundaryUnitary resolve_boundary(const std::string& spec, const std::string& matrix_path,
                                 int max_mode) {
    if (!spec.empty() && !matrix_path.empty()) {
        throw ValidationError("--boundary and --matrix conflict; give exactly one");
    }
    if (!spec.empty()) return parse_boundary_spec(spec, max_mode);
    if (!matrix_path.empty()) return matrix_from_json(load_json_file(matrix_path));
    throw ValidationError("a boundary unitary is required (--boundary or --matrix)");
}

/// Boundary selection flags shared by the single-boundary subcommands.
/// The constructor kind can carry its parameters inline
/// ("rotation:r=0.5") or take them from the separate flags
/// ("--boundary rotation --r 0.5").
struct BoundaryArgs {
    std::string spec;
    std::string matrix;
    double r = std::numeric_limits<double>::quiet_NaN();
    double theta = std::numeric_limits<double>::quiet_NaN();
    std::string phases;
    std::string coeffs;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--boundary", spec, "boundary constructor, inline or with flags");
        cmd->add_option("--matrix", matrix, "boundary matrix json file");
        cmd->add_option("--r", r, "rotation parameter for --boundary rotation|twisted");
        cmd->add_option("--theta", theta, "phase for --boundary scalar");
        cmd->add_option("--phases", phases, "phase list for --boundary diagonal");
        cmd->add_option("--coeffs", coeffs, "twist coefficients for --boundary twisted");
    }

    BoundaryUnitary resolve(int max_mode) const {
        if (spec.find(':') != std::string::npos || spec.empty()) {
            return resolve_boundary(spec, matrix, max_mode);
        }
        if (!matrix.empty()) {
            throw ValidationError("--boundary and --matrix conflict; give exactly one");
        }
        std::string assembled = spec;
        char sep = ':';
        auto append = [&](const std::string& key, const std::string& value) {
            assembled += sep;
            assembled += key + "=" + value;
            sep = ',';
        };
        if (!std::isnan(r)) append("r", format_double(r));
        if (!std::isnan(theta)) append("theta", format_double(theta));
        if (!phases.empty()) append("phases", phases);
        if (!coeffs.empty()) append("coeffs", coeffs);
        return parse_boundary_spec(assembled, max_mode);
    }
};

GridFunction resolve_input(const std::string& input_path, int eigen_index, int band,
                           const BoundaryUnitary& v, const IntervalConfig& interval, int grid) {
    if (!input_path.empty() && eigen_index >= 0) {
        throw ValidationError("--input and --eigen-index conflict; give exactly one");
    }
    if (!input_path.empty()) return grid_from_json(load_json_file(input_path));
    if (eigen_index >= 0) {
        const auto model = eigendecompose(v);
        if (eigen_index >= model.dimension()) {
            throw ValidationError("--eigen-index out of range");
        }
        const double lambda =
            (model.phases[static_cast<std::size_t>(eigen_index)] + band) / interval.length();
        return eigenfunction(lambda, model.vectors.col(eigen_index), v, interval, grid);
    }
    throw ValidationError("an input function is required (--input or --eigen-index)");
}

int env_threads() {
    const char* raw = std::getenv("MOMENTA_THREADS");
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1 || v > 4096) {
        throw ValidationError("MOMENTA_THREADS must be an integer in 1..4096");
    }
    return static_cast<int>(v);
}

json grid_payload(const GridFunction& f) { return grid_to_json(f); }

// ---- subcommand wiring ----

struct Cli {
    CLI::App app{"momenta: spectra, resolvents and commuting pairs of momentum operators"};
    RunConfig cfg;
    json config = json::object();
    std::vector<double> interval_parts = {0.0, 1.0};

    IntervalConfig interval() const { return {interval_parts[0], interval_parts[1]}; }

    void add_globals(CLI::App* cmd) {
        cmd->add_option("--N", cfg.max_mode, "Fourier truncation max mode")
            ->default_val(config.value("N", 2));
        cmd->add_option("--G", cfg.grid, "grid size")->default_val(config.value("G", 128));
        cmd->add_option("--tol", cfg.tol, "tolerance")->default_val(config.value("tol", 1e-9));
        cmd->add_option("--seed", cfg.seed, "random seed")
            ->default_val(config.value("seed", std::uint64_t{42}));
        cmd->add_option("--out", cfg.out, "output path (default stdout)")
            ->default_val(config.value("out", std::string{}));
        cmd->add_option("--format", cfg.format, "output format (json|csv)")
            ->default_val(config.value("format", std::string{}))
            ->check(CLI::IsMember({"", "json", "csv"}));
        cmd->add_option("--interval", interval_parts, "interval endpoints: alpha beta")
            ->expected(2);
        cmd->add_option("--config", config_path_sink,
                        "JSON config file with RunConfig defaults");
    }

    std::string config_path_sink;  // consumed during the pre-scan
};

}  // namespace

int run(int argc, char** argv) {
    Cli cli;
    cli.cfg.threads = env_threads();

    // pre-scan for --config so its values become option defaults
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            cli.config = load_json_file(argv[i + 1]);
        }
    }
    cli.interval_parts = {cli.config.value("alpha", 0.0), cli.config.value("beta", 1.0)};

    CLI::App& app = cli.app;
    app.require_subcommand(1);
    int exit_code = 0;

    // spectrum
    {
        auto* cmd = app.add_subcommand("spectrum", "spectrum points of P_V as value,mult,band");
        cli.add_globals(cmd);
        static BoundaryArgs bnd;
        static std::vector<int> bands;
        bnd.add_options(cmd);
        cmd->add_option("--bands", bands, "band window m_lo m_hi")->expected(2);
        cmd->callback([&cli]() {
            const auto v = bnd.resolve(cli.cfg.max_mode);
            const int lo = bands.size() == 2 ? bands[0] : cli.config.value("m_lo", cli.cfg.m_lo);
            const int hi = bands.size() == 2 ? bands[1] : cli.config.value("m_hi", cli.cfg.m_hi);
            const auto sp = spectrum(eigendecompose(v), cli.interval(), lo, hi);
            if (cli.cfg.format == "json") {
                emit_json(cli.cfg, spectrum_to_json(sp));
            } else {
                emit(cli.cfg, spectrum_to_csv(sp));
            }
        });
    }

    // evolve
    {
        auto* cmd = app.add_subcommand("evolve", "apply the unitary group e(a P_V)");
        cli.add_globals(cmd);
        static BoundaryArgs bnd;
        static std::string input;
        static double a = 0.0;
        static int eigen_index = -1, band = 0;
        static bool interpolate = false;
        cmd->add_option("--a", a, "group parameter")->required();
        bnd.add_options(cmd);
        cmd->add_option("--input", input, "grid function json file");
        cmd->add_option("--eigen-index", eigen_index, "use eigenfunction j of V as input");
        cmd->add_option("--band", band, "band m for --eigen-index");
        cmd->add_flag("--interpolate", interpolate, "allow non-grid-multiple a");
        cmd->callback([&cli]() {
            const auto v = bnd.resolve(cli.cfg.max_mode);
            const auto f =
                resolve_input(input, eigen_index, band, v, cli.interval(), cli.cfg.grid);
            emit_json(cli.cfg, grid_payload(evolve(a, v, f, interpolate)));
        });
    }

    // resolvent
    {
        auto* cmd = app.add_subcommand("resolvent", "(z - P_V)^-1 applied to a grid function");
        cli.add_globals(cmd);
        static BoundaryArgs bnd;
        static std::string input, method = "greens";
        static std::vector<double> z_parts;
        static int eigen_index = -1, band = 0, m_bound = 64;
        cmd->add_option("--z", z_parts, "complex z as: re im")->expected(2)->required();
        cmd->add_option("--method", method, "greens|spectral")
            ->check(CLI::IsMember({"greens", "spectral"}));
        cmd->add_option("--m-bound", m_bound, "band cutoff for the spectral route");
        bnd.add_options(cmd);
        cmd->add_option("--input", input, "grid function json file");
        cmd->add_option("--eigen-index", eigen_index, "use eigenfunction j of V as input");
        cmd->add_option("--band", band, "band m for --eigen-index");
        cmd->callback([&cli]() {
            const auto v = bnd.resolve(cli.cfg.max_mode);
            const auto f =
                resolve_input(input, eigen_index, band, v, cli.interval(), cli.cfg.grid);
            const std::complex<double> z(z_parts[0], z_parts[1]);
            json out;
            if (method == "spectral") {
                const auto r = resolvent_spectral(z, eigendecompose(v), f, m_bound);
                out = {{"grid", grid_payload(r.value)},
                       {"method", "spectral"},
                       {"tail_bound", r.tail_bound}};
            } else {
                out = {{"grid", grid_payload(resolvent_greens(z, v, f))},
                       {"method", "greens"},
                       {"tail_bound", 0.0}};
            }
            emit_json(cli.cfg, out);
        });
    }

    // project
    {
        auto* cmd = app.add_subcommand("project", "spectral projection F((mu,nu)) of P_V");
        cli.add_globals(cmd);
        static BoundaryArgs bnd;
        static std::string input;
        static double mu = 0.0, nu = 0.0;
        static int eigen_index = -1, band = 0;
        cmd->add_option("--mu", mu, "interval left endpoint")->required();
        cmd->add_option("--nu", nu, "interval right endpoint")->required();
        bnd.add_options(cmd);
        cmd->add_option("--input", input, "grid function json file");
        cmd->add_option("--eigen-index", eigen_index, "use eigenfunction j of V as input");
        cmd->add_option("--band", band, "band m for --eigen-index");
        cmd->callback([&cli]() {
            const auto v = bnd.resolve(cli.cfg.max_mode);
            const auto f =
                resolve_input(input, eigen_index, band, v, cli.interval(), cli.cfg.grid);
            const auto proj = spectral_projection(mu, nu, eigendecompose(v), cli.interval());
            json contribs = json::array();
            for (const auto& c : proj.contributions()) {
                contribs.push_back(
                    {{"phase_index", c.phase_index}, {"band", c.band}, {"point", c.point}});
            }
            emit_json(cli.cfg,
                      {{"grid", grid_payload(proj.apply(f))}, {"contributions", contribs}});
        });
    }

    // stone
    {
        auto* cmd =
            app.add_subcommand("stone", "Stone's formula approximant of the projection");
        cli.add_globals(cmd);
        static BoundaryArgs bnd;
        static std::string input;
        static double mu = 0.0, nu = 0.0, b = 1e-3;
        static int eigen_index = -1, band = 0, quad_points = 1000;
        cmd->add_option("--mu", mu)->required();
        cmd->add_option("--nu", nu)->required();
        cmd->add_option("--b", b, "strip half-width");
        cmd->add_option("--quad-points", quad_points, "quadrature subintervals");
        bnd.add_options(cmd);
        cmd->add_option("--input", input, "grid function json file");
        cmd->add_option("--eigen-index", eigen_index, "use eigenfunction j of V as input");
        cmd->add_option("--band", band, "band m for --eigen-index");
        cmd->callback([&cli]() {
            const auto v = bnd.resolve(cli.cfg.max_mode);
            const auto f =
                resolve_input(input, eigen_index, band, v, cli.interval(), cli.cfg.grid);
            const auto r = stone_projection(mu, nu, v, b, f, quad_points);
            emit_json(cli.cfg, {{"grid", grid_payload(r.value)},
                                {"quadrature_estimate", r.quadrature_estimate}});
        });
    }

    // equivalent
    {
        auto* cmd = app.add_subcommand("equivalent",
                                       "unitary equivalence of two boundary unitaries");
        cli.add_globals(cmd);
        static std::string spec_a, spec_b, matrix_a, matrix_b;
        cmd->add_option("--a", spec_a, "first boundary spec");
        cmd->add_option("--b", spec_b, "second boundary spec");
        cmd->add_option("--matrix-a", matrix_a, "first boundary matrix json");
        cmd->add_option("--matrix-b", matrix_b, "second boundary matrix json");
        cmd->callback([&cli]() {
            const auto u = resolve_boundary(spec_a, matrix_a, cli.cfg.max_mode);
            const auto v = resolve_boundary(spec_b, matrix_b, cli.cfg.max_mode);
            emit_json(cli.cfg, {{"equivalent", are_unitarily_equivalent(u, v, cli.cfg.tol)},
                                {"tol", cli.cfg.tol}});
        });
    }

    // commute-square
    {
        auto* cmd = app.add_subcommand("commute-square",
                                       "classify a commuting pair on the unit square");
        cli.add_globals(cmd);
        static std::string spec_u, spec_v, matrix_u, matrix_v;
        cmd->add_option("--u", spec_u, "boundary spec for the x direction");
        cmd->add_option("--v", spec_v, "boundary spec for the y direction");
        cmd->add_option("--matrix-u", matrix_u);
        cmd->add_option("--matrix-v", matrix_v);
        cmd->callback([&cli]() {
            const auto u = resolve_boundary(spec_u, matrix_u, cli.cfg.max_mode);
            const auto v = resolve_boundary(spec_v, matrix_v, cli.cfg.max_mode);
            const auto spec = check_commuting_square(u, v, cli.cfg.tol);
            json out = {{"commuting", spec.has_value()}};
            if (spec) {
                out["case"] = spec->case_tag == SquareCase::u_scalar ? "u_scalar" : "v_scalar";
                out["alpha"] = spec->alpha;
                out["beta"] = spec->beta;
            }
            emit_json(cli.cfg, out);
        });
    }

    // commute-strip
    {
        auto* cmd = app.add_subcommand("commute-strip",
                                       "classify a commuting pair on the infinite strip");
        cli.add_globals(cmd);
        static std::string matrix, gamma_poly;
        static bool shift = false;
        static std::vector<double> freq_grid = {-2.0, 0.5, 9};
        cmd->add_option("--freqs", freq_grid, "frequency grid: start step count")->expected(3);
        cmd->add_option("--matrix", matrix, "U on the frequency basis, matrix json");
        cmd->add_option("--gamma-poly", gamma_poly,
                        "diagonal multiplier with gamma = <poly(lambda)>, coefficients c0,c1,..");
        cmd->add_flag("--shift", shift, "use the frequency-shift example");
        cmd->callback([&cli]() {
            std::vector<double> freqs;
            const int count = static_cast<int>(freq_grid[2]);
            if (count < 1) throw ValidationError("--freqs count must be positive");
            for (int k = 0; k < count; ++k) freqs.push_back(freq_grid[0] + k * freq_grid[1]);
            const auto n = static_cast<int>(freqs.size());
            Eigen::MatrixXcd u;
            const int sources = int(!matrix.empty()) + int(!gamma_poly.empty()) + int(shift);
            if (sources != 1) {
                throw ValidationError(
                    "give exactly one of --matrix, --gamma-poly, --shift");
            }
            if (!matrix.empty()) {
                u = matrix_from_json(load_json_file(matrix)).matrix();
                if (u.rows() != n) throw ValidationError("matrix size does not match --freqs");
            } else if (shift) {
                u = Eigen::MatrixXcd::Zero(n, n);
                for (int k = 0; k + 1 < n; ++k) u(k + 1, k) = 1.0;
                u(0, n - 1) = 1.0;
            } else {
                const auto poly = parse_double_list(gamma_poly);
                u = Eigen::MatrixXcd::Zero(n, n);
                for (int k = 0; k < n; ++k) {
                    double value = 0.0, x = 1.0;
                    for (double c : poly) {
                        value += c * x;
                        x *= freqs[static_cast<std::size_t>(k)];
                    }
                    u(k, k) = unit_phase(value);
                }
            }
            const auto gamma = check_commuting_strip(u, freqs, cli.cfg.tol);
            json out = {{"commuting", gamma.has_value()}};
            if (gamma) {
                out["gamma"] = {{"freqs", gamma->freqs}, {"values", gamma->values}};
            }
            emit_json(cli.cfg, out);
        });
    }

    // joint-spectrum
    {
        auto* cmd = app.add_subcommand("joint-spectrum", "joint spectrum point sets as x,y");
        cli.add_globals(cmd);
        static std::string source = "square", case_tag = "u_scalar", beta_csv, gamma_csv;
        static double sq_alpha = 0.0, r = 0.0;
        static bool geometric = false;
        static std::vector<int> m_range = {-1, 2}, n_range = {-1, 2};
        static int level = 2;
        cmd->add_option("--source", source, "square|strip|fractal")
            ->check(CLI::IsMember({"square", "strip", "fractal"}));
        cmd->add_option("--case", case_tag, "u_scalar|v_scalar")
            ->check(CLI::IsMember({"u_scalar", "v_scalar"}));
        cmd->add_option("--pair-alpha", sq_alpha, "alpha of the commuting pair");
        cmd->add_option("--beta", beta_csv, "beta phases over modes -N..N");
        cmd->add_flag("--geometric", geometric, "beta_m = <r m>");
        cmd->add_option("--r", r, "rotation parameter for --geometric");
        cmd->add_option("--gamma", gamma_csv, "gamma values (strip/fractal)");
        cmd->add_option("--m-range", m_range, "lo hi")->expected(2);
        cmd->add_option("--n-range", n_range, "lo hi")->expected(2);
        cmd->add_option("--level", level, "lambda set level (fractal)");
        cmd->callback([&cli]() {
            JointSpectrum sp;
            if (source == "square") {
                CommutingPairSpec spec;
                spec.case_tag =
                    case_tag == "u_scalar" ? SquareCase::u_scalar : SquareCase::v_scalar;
                spec.alpha = sq_alpha;
                spec.max_mode = cli.cfg.max_mode;
                if (geometric) {
                    for (int m = -spec.max_mode; m <= spec.max_mode; ++m) {
                        spec.beta.push_back(frac_mod1(r * m));
                    }
                } else {
                    spec.beta = parse_double_list(beta_csv);
                }
                sp = joint_spectrum_square(spec, m_range[0], m_range[1], n_range[0], n_range[1]);
            } else if (source == "strip") {
                GammaFunction gamma;
                gamma.values = parse_double_list(gamma_csv);
                for (std::size_t k = 0; k < gamma.values.size(); ++k) {
                    gamma.freqs.push_back(static_cast<double>(k));
                }
                sp = joint_spectrum_strip(gamma, m_range[0], m_range[1]);
            } else {
                const auto set = lambda_set(level);
                sp = joint_spectrum_fractal(parse_double_list(gamma_csv), set, m_range[0],
                                            m_range[1]);
            }
            if (cli.cfg.format == "json") {
                emit_json(cli.cfg, joint_spectrum_to_json(sp));
            } else {
                emit(cli.cfg, joint_spectrum_to_csv(sp));
            }
        });
    }

    // tiling
    {
        auto* cmd = app.add_subcommand("tiling", "verify unit-square tiling on a window");
        cli.add_globals(cmd);
        static std::string spec_kind = "geometric";
        static double r = 0.0, pair_alpha = 0.0;
        static std::vector<double> window = {0.25, 3.75};
        static int resolution = 64;
        cmd->add_option("--spec", spec_kind, "geometric")->check(CLI::IsMember({"geometric"}));
        cmd->add_option("--r", r, "rotation parameter");
        cmd->add_option("--pair-alpha", pair_alpha, "alpha of the commuting pair");
        cmd->add_option("--window", window, "square window: lo hi")->expected(2);
        cmd->add_option("--resolution", resolution, "raster cells per unit length");
        cmd->callback([&cli]() {
            const double lo = window[0], hi = window[1];
            if (!(lo < hi)) throw ValidationError("tiling: empty window");
            // generation ranges wide enough that every translate reaching
            // the window is present
            const int m_lo = static_cast<int>(std::floor(lo - 1.0 - pair_alpha)) - 1;
            const int m_hi = static_cast<int>(std::ceil(hi - pair_alpha)) + 1;
            const int n_lo = static_cast<int>(std::floor(lo - 1.0)) - 2;
            const int n_hi = static_cast<int>(std::ceil(hi)) + 1;
            const int max_mode = std::max(std::abs(m_lo), std::abs(m_hi));
            CommutingPairSpec spec;
            spec.case_tag = SquareCase::u_scalar;
            spec.alpha = pair_alpha;
            spec.max_mode = max_mode;
            for (int m = -max_mode; m <= max_mode; ++m) spec.beta.push_back(frac_mod1(r * m));
            const auto sp = joint_spectrum_square(spec, m_lo, m_hi, n_lo, n_hi);
            const auto report =
                tiling_check(sp, {lo, hi, lo, hi}, resolution, cli.cfg.threads);
            emit_json(cli.cfg, tiling_report_to_json(report));
        });
    }

    // geometric
    {
        auto* cmd = app.add_subcommand("geometric",
                                       "detect a rotation boundary condition from beta phases");
        cli.add_globals(cmd);
        static std::string beta_csv;
        static double pair_alpha = 0.0;
        cmd->add_option("--beta", beta_csv, "beta phases over modes -N..N")->required();
        cmd->add_option("--pair-alpha", pair_alpha);
        cmd->callback([&cli]() {
            CommutingPairSpec spec;
            spec.case_tag = SquareCase::u_scalar;
            spec.alpha = pair_alpha;
            spec.beta = parse_double_list(beta_csv);
            if (spec.beta.size() % 2 == 0) {
                throw ValidationError("--beta must list 2N+1 phases");
            }
            spec.max_mode = (static_cast<int>(spec.beta.size()) - 1) / 2;
            const auto r = detect_geometric(spec, cli.cfg.tol);
            json out = {{"geometric", r.has_value()}};
            if (r) out["r"] = *r;
            emit_json(cli.cfg, out);
        });
    }

    // cantor-lambda
    {
        auto* cmd = app.add_subcommand("cantor-lambda", "exponential spectrum of the measure");
        cli.add_globals(cmd);
        static int level = 2;
        cmd->add_option("--level", level, "lambda set level")->required();
        cmd->callback([&cli]() {
            const auto set = lambda_set(level);
            if (cli.cfg.format == "json") {
                emit_json(cli.cfg, {{"level", set.level}, {"values", set.values}});
            } else {
                emit(cli.cfg, lambda_set_to_csv(set));
            }
        });
    }

    // cantor-gram
    {
        auto* cmd = app.add_subcommand("cantor-gram", "Gram defect of the exponential family");
        cli.add_globals(cmd);
        static int level = 3, depth = 40;
        cmd->add_option("--level", level)->required();
        cmd->add_option("--depth", depth, "product truncation depth");
        cmd->callback([&cli]() {
            const auto result = gram_matrix(lambda_set(level), depth);
            emit_json(cli.cfg,
                      {{"n", level}, {"depth", depth}, {"max_defect", result.max_defect}});
        });
    }

    // fractal-commute
    {
        auto* cmd = app.add_subcommand("fractal-commute",
                                       "commuting criterion on the fractal product");
        cli.add_globals(cmd);
        static std::string matrix, gamma_csv;
        static int level = 2;
        static bool identity = false;
        cmd->add_option("--level", level)->required();
        cmd->add_option("--matrix", matrix, "U on the e_lambda basis, matrix json");
        cmd->add_option("--gamma", gamma_csv, "build diagonal U from these phases");
        cmd->add_flag("--identity", identity, "use U = I");
        cmd->callback([&cli]() {
            const auto set = lambda_set(level);
            const auto dim = static_cast<int>(set.values.size());
            Eigen::MatrixXcd u;
            const int sources = int(!matrix.empty()) + int(!gamma_csv.empty()) + int(identity);
            if (sources != 1) {
                throw ValidationError("give exactly one of --matrix, --gamma, --identity");
            }
            if (!matrix.empty()) {
                u = matrix_from_json(load_json_file(matrix)).matrix();
            } else if (identity) {
                u = Eigen::MatrixXcd::Identity(dim, dim);
            } else {
                const auto phases = parse_double_list(gamma_csv);
                if (static_cast<int>(phases.size()) != dim) {
                    throw ValidationError("--gamma must list 2^level phases");
                }
                u = Eigen::MatrixXcd::Zero(dim, dim);
                for (int k = 0; k < dim; ++k) u(k, k) = unit_phase(phases[k]);
            }
            if (u.rows() != dim) throw ValidationError("matrix size does not match 2^level");
            const auto gamma = check_commuting_fractal(u, cli.cfg.tol);
            json out = {{"commuting", gamma.has_value()}, {"lambda", set.values}};
            if (gamma) out["gamma"] = *gamma;
            emit_json(cli.cfg, out);
        });
    }

    // cayley
    {
        auto* cmd = app.add_subcommand("cayley",
                                       "Cayley map between boundary and von Neumann unitaries");
        cli.add_globals(cmd);
        static BoundaryArgs bnd;
        static std::string direction = "to-vn";
        cmd->add_option("--direction", direction, "to-vn|to-boundary")
            ->check(CLI::IsMember({"to-vn", "to-boundary"}));
        bnd.add_options(cmd);
        cmd->callback([&cli]() {
            const auto v = bnd.resolve(cli.cfg.max_mode);
            const auto out = direction == "to-vn" ? cayley_boundary_to_vn(v, cli.interval())
                                                  : cayley_vn_to_boundary(v, cli.interval());
            emit_json(cli.cfg, matrix_to_json(out));
        });
    }

    // deficiency
    {
        auto* cmd = app.add_subcommand("deficiency", "deficiency vector diagnostics");
        cli.add_globals(cmd);
        static std::string sign = "plus";
        static int h_index = 0;
        cmd->add_option("--sign", sign, "plus|minus")->check(CLI::IsMember({"plus", "minus"}));
        cmd->add_option("--h-index", h_index, "basis vector index in 0..2N");
        cmd->callback([&cli]() {
            const int dim = 2 * cli.cfg.max_mode + 1;
            if (h_index < 0 || h_index >= dim) throw ValidationError("--h-index out of range");
            Eigen::VectorXcd h = Eigen::VectorXcd::Zero(dim);
            h(h_index) = 1.0;
            const auto d = deficiency_vector(
                sign == "plus" ? DeficiencySign::plus : DeficiencySign::minus, h,
                cli.interval(), cli.cfg.grid);
            const double expected =
                (std::exp(4.0 * M_PI * cli.interval().length()) - 1.0) * h.squaredNorm();
            emit_json(cli.cfg,
                      {{"sign", sign},
                       {"residual", d.residual},
                       {"norm_squared", d.norm_squared},
                       {"norm_identity_error",
                        std::abs(4.0 * M_PI * d.norm_squared - expected) / expected},
                       {"grid", grid_payload(d.samples)}});
        });
    }

    // domain-check
    {
        auto* cmd = app.add_subcommand("domain-check",
                                       "test the boundary condition f(beta) = V f(alpha)");
        cli.add_globals(cmd);
        static BoundaryArgs bnd;
        static std::string input;
        static int eigen_index = -1, band = 0;
        bnd.add_options(cmd);
        cmd->add_option("--input", input, "grid function json file")->required();
        cmd->add_option("--eigen-index", eigen_index);
        cmd->add_option("--band", band);
        cmd->callback([&cli]() {
            const auto v = bnd.resolve(cli.cfg.max_mode);
            const auto f =
                resolve_input(input, eigen_index, band, v, cli.interval(), cli.cfg.grid);
            const Eigen::VectorXcd at_beta = endpoint_value(f);
            const Eigen::VectorXcd v_alpha = v.matrix() * f.values.row(0).transpose();
            const double fnorm = f.norm();
            const double err = fnorm > 0 ? (at_beta - v_alpha).norm() / fnorm : 0.0;
            emit_json(cli.cfg, {{"in_domain", domain_check(f, v, cli.cfg.tol)},
                                {"boundary_error", err},
                                {"tol", cli.cfg.tol}});
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return exit_code;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
