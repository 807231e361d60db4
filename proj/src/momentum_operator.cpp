#include "momenta/momentum_operator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

namespace momenta {

namespace {

// 4-point Gauss-Legendre on [0,1]
constexpr std::array<double, 4> kGaussNode = {
    0.069431844202973712388026755553595247452,
    0.330009478207571867598667120448377656400,
    0.669990521792428132401332879551622343600,
    0.930568155797026287611973244446404752548};
constexpr std::array<double, 4> kGaussWeight = {
    0.173927422568726928686531974610999703618,
    0.326072577431273071313468025389000296382,
    0.326072577431273071313468025389000296382,
    0.173927422568726928686531974610999703618};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Eigen::MatrixXcd integer_power(const Eigen::MatrixXcd& v, std::int64_t w) {
    const int dim = static_cast<int>(v.rows());
    Eigen::MatrixXcd base = w >= 0 ? v : Eigen::MatrixXcd(v.adjoint());
    std::uint64_t e = static_cast<std::uint64_t>(w >= 0 ? w : -w);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(dim, dim);
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

void require_matching(const BoundaryUnitary& v, const GridFunction& f) {
    if (v.truncation().max_mode != f.truncation.max_mode) {
        throw ValidationError("boundary unitary and grid function truncations differ");
    }
}

// smallest |1 - e(-Lz) e(lambda_j)| over eigenphases
double resolvent_denominator_bound(std::complex<double> z, const SpectralModel& model,
                                   double len) {
    const std::complex<double> c = exp_i2pi(-len * z);
    double lo = std::numeric_limits<double>::max();
    for (double p : model.phases) {
        lo = std::min(lo, std::abs(1.0 - c * unit_phase(p)));
    }
    return lo;
}

}  // namespace

std::complex<double> exp_i2pi(std::complex<double> w) {
    return std::exp(std::complex<double>(0.0, two_pi) * w);
}

GridFunction evolve(double a, const BoundaryUnitary& v, const GridFunction& f,
                    bool allow_interpolation) {
    f.validate();
    require_matching(v, f);
    if (!std::isfinite(a)) throw ValidationError("evolve: a must be finite");

    const int grid = f.grid_size();
    const double h = f.step();
    const double k_real = a / h;
    const auto k = static_cast<std::int64_t>(std::llround(k_real));
    const bool on_grid = std::abs(k_real - static_cast<double>(k)) <=
                         1e-9 * std::max(1.0, std::abs(k_real));

    GridFunction out = zero_like(f);
    if (on_grid) {
        std::map<std::int64_t, Eigen::MatrixXcd> powers;
        for (int i = 0; i < grid; ++i) {
            const std::int64_t shifted = static_cast<std::int64_t>(i) + k;
            const std::int64_t winding = floor_div(shifted, grid);
            const auto src = static_cast<int>(shifted - winding * grid);
            auto it = powers.find(winding);
            if (it == powers.end()) {
                it = powers.emplace(winding, integer_power(v.matrix(), winding)).first;
            }
            out.values.row(i) = (it->second * f.values.row(src).transpose()).transpose();
        }
        return out;
    }

    if (!allow_interpolation) {
        throw ValidationError(
            "evolve: a is not a grid multiple; pass allow_interpolation for the "
            "band-limited variant");
    }

    // band-limited variant: trig interpolation of the raw samples
    const int dim = f.truncation.dimension();
    Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(grid, dim);
    for (int kk = 0; kk < grid; ++kk) {
        for (int i = 0; i < grid; ++i) {
            coeffs.row(kk) += unit_phase(-static_cast<double>(kk) * i / grid) * f.values.row(i);
        }
    }
    coeffs /= static_cast<double>(grid);
    std::map<std::int64_t, Eigen::MatrixXcd> powers;
    for (int i = 0; i < grid; ++i) {
        const PhaseDecomposition d = decompose(f.node(i) + a, f.interval);
        const double u = (d.frac - f.interval.alpha) / f.interval.length();
        Eigen::RowVectorXcd val = Eigen::RowVectorXcd::Zero(dim);
        for (int kk = 0; kk < grid; ++kk) {
            const int mode = (kk <= (grid - 1) / 2) ? kk : kk - grid;
            val += unit_phase(mode * u) * coeffs.row(kk);
        }
        auto it = powers.find(d.winding);
        if (it == powers.end()) {
            it = powers.emplace(d.winding, integer_power(v.matrix(), d.winding)).first;
        }
        out.values.row(i) = (it->second * val.transpose()).transpose();
    }
    return out;
}

MomentumSpectrum spectrum(const SpectralModel& model, const IntervalConfig& interval, int m_lo,
                          int m_hi) {
    interval.validate();
    if (m_lo > m_hi) throw ValidationError("spectrum: m_lo must be <= m_hi");
    const double len = interval.length();

    struct Raw {
        double value;
        int band;
    };
    std::vector<Raw> raw;
    raw.reserve(model.phases.size() * static_cast<std::size_t>(m_hi - m_lo + 1));
    for (int m = m_lo; m <= m_hi; ++m) {
        for (double p : model.phases) {
            raw.push_back({(p + m) / len, m});
        }
    }
    std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.value < b.value; });

    MomentumSpectrum out;
    out.interval = interval;
    out.m_lo = m_lo;
    out.m_hi = m_hi;
    for (const Raw& r : raw) {
        if (!out.points.empty() && std::abs(r.value - out.points.back().value) <= 1e-10) {
            ++out.points.back().multiplicity;
        } else {
            out.points.push_back({r.value, 1, r.band});
        }
    }
    return out;
}

GridFunction eigenfunction(double lambda, const Eigen::VectorXcd& h, const BoundaryUnitary& v,
                           const IntervalConfig& interval, int grid_size) {
    interval.validate();
    if (grid_size < 2) throw ValidationError("eigenfunction: grid too small");
    if (h.size() != v.dimension()) throw ValidationError("eigenfunction: h has wrong dimension");
    const double hn = h.norm();
    if (hn == 0.0) throw ValidationError("eigenfunction: h must be nonzero");
    const std::complex<double> ev = unit_phase(interval.length() * lambda);
    if ((v.matrix() * h - ev * h).norm() > 1e-8 * hn) {
        throw ValidationError("eigenfunction: (lambda, h) is not an eigenpair of V");
    }

    GridFunction f;
    f.interval = interval;
    f.truncation = v.truncation();
    f.values.resize(grid_size, v.dimension());
    for (int i = 0; i < grid_size; ++i) {
        f.values.row(i) = unit_phase(lambda * f.node(i)) * h.transpose();
    }
    return f;
}

BandCoefficients::BandCoefficients(const GridFunction& f, const SpectralModel& model)
    : model_(model), interval_(f.interval), grid_(f.grid_size()),
      max_mode_(f.truncation.max_mode) {
    f.validate();
    if (model.dimension() != f.truncation.dimension()) {
        throw ValidationError("band coefficients: model dimension does not match grid data");
    }
    const int dim = model.dimension();
    const double len = interval_.length();

    // eigencomponents s_j(x_i) = <h_j, f(x_i)>, detrended per phase
    Eigen::MatrixXcd comps = f.values * model_.vectors.conjugate();
    Eigen::MatrixXcd detrended(grid_, dim);
    for (int i = 0; i < grid_; ++i) {
        const double u = (f.node(i) - interval_.alpha) / len;
        for (int j = 0; j < dim; ++j) {
            detrended(i, j) =
                std::conj(unit_phase(model_.phases[static_cast<std::size_t>(j)] * u)) *
                comps(i, j);
        }
    }

    coeffs_.resize(dim, grid_);
    for (int k = 0; k < grid_; ++k) {
        Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(dim);
        for (int i = 0; i < grid_; ++i) {
            acc += unit_phase(-static_cast<double>(k) * i / grid_) * detrended.row(i);
        }
        coeffs_.col(k) = acc.transpose() / static_cast<double>(grid_);
    }
}

std::complex<double> BandCoefficients::coefficient(int j, int m) const {
    if (j < 0 || j >= model_.dimension()) throw ValidationError("band coefficient: bad index");
    if (std::abs(m) > max_band()) return 0.0;
    const int bin = m >= 0 ? m : m + grid_;
    return coeffs_(j, bin);
}

Eigen::VectorXcd BandCoefficients::evaluate(double x) const {
    const int dim = model_.dimension();
    const double u = (x - interval_.alpha) / interval_.length();
    Eigen::VectorXcd per_component = Eigen::VectorXcd::Zero(dim);
    for (int k = 0; k < grid_; ++k) {
        const int mode = (k <= (grid_ - 1) / 2) ? k : k - grid_;
        per_component += unit_phase(mode * u) * coeffs_.col(k);
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int j = 0; j < dim; ++j) {
        const std::complex<double> g =
            per_component(j) * unit_phase(model_.phases[static_cast<std::size_t>(j)] * u);
        out += g * model_.vectors.col(j);
    }
    return out;
}

GridFunction BandCoefficients::synthesize() const {
    GridFunction f;
    f.interval = interval_;
    f.truncation = FourierTruncation{max_mode_};
    const int dim = model_.dimension();
    f.values.resize(grid_, dim);
    for (int i = 0; i < grid_; ++i) {
        const double u = static_cast<double>(i) / grid_;
        Eigen::VectorXcd per_component = Eigen::VectorXcd::Zero(dim);
        for (int k = 0; k < grid_; ++k) {
            const int mode = (k <= (grid_ - 1) / 2) ? k : k - grid_;
            per_component += unit_phase(mode * u) * coeffs_.col(k);
        }
        Eigen::VectorXcd val = Eigen::VectorXcd::Zero(dim);
        for (int j = 0; j < dim; ++j) {
            const std::complex<double> g =
                per_component(j) * unit_phase(model_.phases[static_cast<std::size_t>(j)] * u);
            val += g * model_.vectors.col(j);
        }
        f.values.row(i) = val.transpose();
    }
    return f;
}

ResolventResult resolvent_spectral(std::complex<double> z, const SpectralModel& model,
                                   const GridFunction& f, int m_bound) {
    if (m_bound < 1) throw ValidationError("resolvent: m_bound must be >= 1");
    const double len = f.interval.length();
    const BandCoefficients lift(f, model);
    const int dim = model.dimension();
    const int grid = f.grid_size();

    if (z.imag() == 0.0) {
        double dist = std::numeric_limits<double>::max();
        for (double p : model.phases) {
            for (int m = -m_bound - 1; m <= m_bound + 1; ++m) {
                dist = std::min(dist, std::abs(z.real() - (p + m) / len));
            }
        }
        if (dist <= 1e-8) {
            throw ValidationError("resolvent: z lies on the spectrum");
        }
    }

    BandCoefficients result = lift;
    double tail_mass = 0.0;
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < grid; ++k) {
            const int mode = (k <= (grid - 1) / 2) ? k : k - grid;
            if (std::abs(mode) > m_bound) {
                tail_mass += len * std::norm(lift.raw()(j, k));
                result.raw()(j, k) = 0.0;
            } else {
                const double point =
                    (model.phases[static_cast<std::size_t>(j)] + mode) / len;
                result.raw()(j, k) = lift.raw()(j, k) / (z - point);
            }
        }
    }

    double denom = std::abs(z.imag());
    if (denom == 0.0) {
        denom = std::numeric_limits<double>::max();
        for (double p : model.phases) {
            denom = std::min({denom, std::abs(z.real() - (p + m_bound + 1) / len),
                              std::abs(z.real() - (p - m_bound - 1) / len)});
        }
    }
    return {result.synthesize(), std::sqrt(tail_mass) / denom};
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> greens_branch_coefficients(
    std::complex<double> z, const BoundaryUnitary& v, const IntervalConfig& interval) {
    interval.validate();
    const int dim = v.dimension();
    const std::complex<double> c = exp_i2pi(-interval.length() * z);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd m_z = (id - c * v.matrix()).partialPivLu().solve(id);
    const std::complex<double> i2pi(0.0, two_pi);
    return {i2pi * m_z, i2pi * (m_z - id)};
}

GridFunction resolvent_greens(std::complex<double> z, const BoundaryUnitary& v,
                              const GridFunction& f) {
    f.validate();
    require_matching(v, f);
    const SpectralModel model = eigendecompose(v);
    const double len = f.interval.length();

    const double lo = resolvent_denominator_bound(z, model, len);
    const std::complex<double> c = exp_i2pi(-len * z);
    if (lo <= 0.0 || (1.0 + std::abs(c)) / lo > 1e12) {
        throw NumericalError("resolvent: 1 - e(-Lz)V is near singular");
    }

    const BandCoefficients lift(f, model);
    const int grid = f.grid_size();
    const int dim = v.dimension();
    const double h = f.step();

    // per-cell integrals of e(-z(s-alpha)) f(s) ds
    Eigen::MatrixXcd cell(dim, grid);
    for (int i = 0; i < grid; ++i) {
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
        for (int t = 0; t < 4; ++t) {
            const double u = (i + kGaussNode[static_cast<std::size_t>(t)]) * h;
            const Eigen::VectorXcd fs = lift.evaluate(f.interval.alpha + u);
            acc += kGaussWeight[static_cast<std::size_t>(t)] * h * exp_i2pi(-z * u) * fs;
        }
        cell.col(i) = acc;
    }

    Eigen::VectorXcd total = cell.rowwise().sum();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(dim, dim) - c * v.matrix();
    Eigen::VectorXcd mt = a.partialPivLu().solve(total);

    GridFunction out = zero_like(f);
    Eigen::VectorXcd prefix = Eigen::VectorXcd::Zero(dim);
    const std::complex<double> i2pi(0.0, two_pi);
    for (int i = 0; i < grid; ++i) {
        const double u = i * h;
        out.values.row(i) = (i2pi * exp_i2pi(z * u) * (mt - prefix)).transpose();
        prefix += cell.col(i);
    }
    return out;
}

SpectralProjection::SpectralProjection(double mu, double nu, const SpectralModel& model,
                                       const IntervalConfig& interval)
    : mu_(mu), nu_(nu), model_(model), interval_(interval) {
    interval_.validate();
    if (!(mu < nu)) throw ValidationError("spectral projection: need mu < nu");
    const double len = interval_.length();
    const int m_lo = static_cast<int>(std::floor(mu * len)) - 1;
    const int m_hi = static_cast<int>(std::ceil(nu * len)) + 1;
    for (int m = m_lo; m <= m_hi; ++m) {
        for (int j = 0; j < model_.dimension(); ++j) {
            const double point = (model_.phases[static_cast<std::size_t>(j)] + m) / len;
            if (std::abs(point - mu) <= 1e-9 || std::abs(point - nu) <= 1e-9) {
                throw ValidationError(
                    "spectral projection: interval endpoint collides with a spectrum point");
            }
            if (point > mu && point < nu) {
                contributions_.push_back({j, m, point});
            }
        }
    }
    std::sort(contributions_.begin(), contributions_.end(),
              [](const BandContribution& a, const BandContribution& b) {
                  return a.point < b.point;
              });
}

std::vector<std::complex<double>> SpectralProjection::component_coefficients(
    const GridFunction& f) const {
    f.validate();
    if (f.truncation.dimension() != model_.dimension()) {
        throw ValidationError("spectral projection: dimension mismatch");
    }
    if (std::abs(f.interval.alpha - interval_.alpha) > 1e-12 ||
        std::abs(f.interval.beta - interval_.beta) > 1e-12) {
        throw ValidationError("spectral projection: interval mismatch");
    }
    const int grid = f.grid_size();
    const double len = interval_.length();
    const Eigen::MatrixXcd comps = f.values * model_.vectors.conjugate();

    std::vector<std::complex<double>> coeffs;
    coeffs.reserve(contributions_.size());
    for (const BandContribution& contrib : contributions_) {
        const double freq = model_.phases[static_cast<std::size_t>(contrib.phase_index)] +
                            contrib.band;
        std::complex<double> acc = 0.0;
        for (int i = 0; i < grid; ++i) {
            const double u = (f.node(i) - interval_.alpha) / len;
            acc += std::conj(unit_phase(freq * u)) * comps(i, contrib.phase_index);
        }
        coeffs.push_back(acc / static_cast<double>(grid));
    }
    return coeffs;
}

GridFunction SpectralProjection::apply(const GridFunction& f) const {
    const std::vector<std::complex<double>> coeffs = component_coefficients(f);
    GridFunction out = zero_like(f);
    const double len = interval_.length();
    for (std::size_t c = 0; c < contributions_.size(); ++c) {
        const BandContribution& contrib = contributions_[c];
        const double freq = model_.phases[static_cast<std::size_t>(contrib.phase_index)] +
                            contrib.band;
        const Eigen::VectorXcd& h = model_.vectors.col(contrib.phase_index);
        for (int i = 0; i < out.grid_size(); ++i) {
            const double u = (f.node(i) - interval_.alpha) / len;
            out.values.row(i) += coeffs[c] * unit_phase(freq * u) * h.transpose();
        }
    }
    return out;
}

SpectralProjection spectral_projection(double mu, double nu, const SpectralModel& model,
                                       const IntervalConfig& interval) {
    return {mu, nu, model, interval};
}

StoneResult stone_projection(double mu, double nu, const BoundaryUnitary& v, double b,
                             const GridFunction& f, int quad_points) {
    f.validate();
    require_matching(v, f);
    if (!(b > 0.0)) throw ValidationError("stone: b must be positive");
    if (!(mu < nu)) throw ValidationError("stone: need mu < nu");
    if (quad_points < 1) throw ValidationError("stone: need at least one quadrature cell");

    const SpectralModel model = eigendecompose(v);
    const BandCoefficients lift(f, model);
    const int grid = f.grid_size();
    const int dim = v.dimension();
    const double len = f.interval.length();
    const double h = f.step();
    const std::complex<double> i2pi(0.0, two_pi);

    // f at the Gauss nodes and the matching e(-z u) weights are reused
    // for every quadrature point in a.
    Eigen::MatrixXcd node_values(dim, 4 * grid);
    Eigen::VectorXd node_u(4 * grid);
    Eigen::VectorXd node_w(4 * grid);
    for (int i = 0; i < grid; ++i) {
        for (int t = 0; t < 4; ++t) {
            const int idx = 4 * i + t;
            node_u(idx) = (i + kGaussNode[static_cast<std::size_t>(t)]) * h;
            node_w(idx) = kGaussWeight[static_cast<std::size_t>(t)] * h;
            node_values.col(idx) = lift.evaluate(f.interval.alpha + node_u(idx));
        }
    }

    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    auto resolvent_at = [&](std::complex<double> z, Eigen::MatrixXcd& out_rows) {
        Eigen::MatrixXcd cell = Eigen::MatrixXcd::Zero(dim, grid);
        for (int i = 0; i < grid; ++i) {
            Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
            for (int t = 0; t < 4; ++t) {
                const int idx = 4 * i + t;
                acc += node_w(idx) * exp_i2pi(-z * node_u(idx)) * node_values.col(idx);
            }
            cell.col(i) = acc;
        }
        const std::complex<double> c = exp_i2pi(-len * z);
        Eigen::VectorXcd mt = (id - c * v.matrix()).partialPivLu().solve(cell.rowwise().sum());
        Eigen::VectorXcd prefix = Eigen::VectorXcd::Zero(dim);
        for (int i = 0; i < grid; ++i) {
            out_rows.row(i) = (i2pi * exp_i2pi(z * (i * h)) * (mt - prefix)).transpose();
            prefix += cell.col(i);
        }
    };

    auto integrate = [&](int cells) {
        GridFunction acc = zero_like(f);
        Eigen::MatrixXcd r_minus(grid, dim);
        Eigen::MatrixXcd r_plus(grid, dim);
        const double width = (nu - mu) / cells;
        for (int q = 0; q < cells; ++q) {
            for (int t = 0; t < 4; ++t) {
                const double a = mu + (q + kGaussNode[static_cast<std::size_t>(t)]) * width;
                const double w = kGaussWeight[static_cast<std::size_t>(t)] * width;
                resolvent_at({a, -b}, r_minus);
                resolvent_at({a, b}, r_plus);
                acc.values += (w / i2pi) * (r_minus - r_plus);
            }
        }
        return acc;
    };

    GridFunction fine = integrate(quad_points);
    const int coarse_cells = std::max(1, quad_points / 2);
    GridFunction coarse = integrate(coarse_cells);
    const double fnorm = f.norm();
    StoneResult result{fine, 0.0};
    if (fnorm > 0.0) {
        GridFunction diff = fine;
        diff.values -= coarse.values;
        result.quadrature_estimate = diff.norm() / fnorm;
        if (result.quadrature_estimate > 0.5) {
            throw NumericalError("stone: quadrature did not converge");
        }
    }
    return result;
}

std::vector<BandPointSet> band_partition(const MomentumSpectrum& sp) {
    if (std::abs(sp.interval.length() - 1.0) > 1e-12) {
        throw ValidationError("band partition: interval must have unit length");
    }
    std::map<int, BandPointSet> bands;
    for (const SpectrumPoint& p : sp.points) {
        auto& set = bands[p.band];
        set.band = p.band;
        set.points.push_back(p);
    }
    std::vector<BandPointSet> out;
    out.reserve(bands.size());
    for (auto& [band, set] : bands) out.push_back(std::move(set));
    return out;
}

}  // namespace momenta
