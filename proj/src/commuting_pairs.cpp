#include "momenta/commuting_pairs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace momenta {

namespace {

bool is_diagonal(const Eigen::MatrixXcd& m, double tol) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (i != j && std::abs(m(i, j)) > tol) return false;
        }
    }
    return true;
}

bool is_scalar(const Eigen::MatrixXcd& m, double tol) {
    if (!is_diagonal(m, tol)) return false;
    const std::complex<double> first = m(0, 0);
    for (int i = 1; i < m.rows(); ++i) {
        if (std::abs(m(i, i) - first) > tol) return false;
    }
    return true;
}

std::vector<double> diagonal_phases(const Eigen::MatrixXcd& m) {
    std::vector<double> phases(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        phases[static_cast<std::size_t>(i)] = frac_mod1(std::arg(m(i, i)) / two_pi);
    }
    return phases;
}

void dedupe_points(JointSpectrum& sp) {
    std::sort(sp.points.begin(), sp.points.end());
    auto last = std::unique(sp.points.begin(), sp.points.end(),
                            [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
                                return std::abs(a[0] - b[0]) <= 1e-10 &&
                                       std::abs(a[1] - b[1]) <= 1e-10;
                            });
    sp.points.erase(last, sp.points.end());
}

}  // namespace

double CommutingPairSpec::beta_of_mode(int m) const {
    if (m < -max_mode || m > max_mode) {
        throw ValidationError("commuting pair: mode outside truncation");
    }
    return beta[static_cast<std::size_t>(m + max_mode)];
}

void CommutingPairSpec::validate() const {
    if (static_cast<int>(beta.size()) != 2 * max_mode + 1) {
        throw ValidationError("commuting pair: beta list must cover modes -N..N");
    }
    if (alpha < 0.0 || alpha >= 1.0) {
        throw ValidationError("commuting pair: alpha must lie in [0,1)");
    }
    for (double b : beta) {
        if (b < 0.0 || b >= 1.0) {
            throw ValidationError("commuting pair: beta phases must lie in [0,1)");
        }
    }
}

std::optional<CommutingPairSpec> check_commuting_square(const BoundaryUnitary& u,
                                                        const BoundaryUnitary& v, double tol) {
    if (u.dimension() != v.dimension()) {
        throw ValidationError("check_commuting_square: dimension mismatch");
    }
    CommutingPairSpec spec;
    spec.max_mode = u.truncation().max_mode;
    if (is_scalar(u.matrix(), tol) && is_diagonal(v.matrix(), tol)) {
        spec.case_tag = SquareCase::u_scalar;
        spec.alpha = frac_mod1(std::arg(u.matrix()(0, 0)) / two_pi);
        spec.beta = diagonal_phases(v.matrix());
        return spec;
    }
    if (is_scalar(v.matrix(), tol) && is_diagonal(u.matrix(), tol)) {
        spec.case_tag = SquareCase::v_scalar;
        spec.alpha = frac_mod1(std::arg(v.matrix()(0, 0)) / two_pi);
        spec.beta = diagonal_phases(u.matrix());
        return spec;
    }
    return std::nullopt;
}

JointSpectrum joint_spectrum_square(const CommutingPairSpec& spec, int m_lo, int m_hi, int n_lo,
                                    int n_hi) {
    spec.validate();
    if (m_lo > m_hi || n_lo > n_hi) {
        throw ValidationError("joint spectrum: empty index range");
    }
    JointSpectrum sp;
    if (spec.case_tag == SquareCase::u_scalar) {
        for (int m = m_lo; m <= m_hi; ++m) {
            const double bm = spec.beta_of_mode(m);
            for (int n = n_lo; n <= n_hi; ++n) {
                sp.points.push_back({spec.alpha + m, bm + n});
            }
        }
        sp.window = {spec.alpha + m_lo, spec.alpha + m_hi, static_cast<double>(n_lo) + 1.0,
                     static_cast<double>(n_hi)};
    } else {
        for (int n = n_lo; n <= n_hi; ++n) {
            const double bn = spec.beta_of_mode(n);
            for (int m = m_lo; m <= m_hi; ++m) {
                sp.points.push_back({bn + m, spec.alpha + n});
            }
        }
        sp.window = {static_cast<double>(m_lo) + 1.0, static_cast<double>(m_hi),
                     spec.alpha + n_lo, spec.alpha + n_hi};
    }
    dedupe_points(sp);
    return sp;
}

std::optional<double> detect_geometric(const CommutingPairSpec& spec, double tol) {
    spec.validate();
    if (spec.max_mode < 1) return std::nullopt;
    const double candidate = spec.beta_of_mode(1);
    for (int m = -spec.max_mode; m <= spec.max_mode; ++m) {
        if (circular_distance(spec.beta_of_mode(m), frac_mod1(candidate * m)) > tol) {
            return std::nullopt;
        }
    }
    return candidate;
}

TilingReport tiling_check(const JointSpectrum& sp, const Window2D& window, int resolution,
                          int threads) {
    if (resolution < 1) throw ValidationError("tiling: resolution must be positive");
    if (threads < 1) throw ValidationError("tiling: thread count must be positive");
    if (!(window.xmin < window.xmax) || !(window.ymin < window.ymax)) {
        throw ValidationError("tiling: empty window");
    }
    const double tol = 1e-9;
    if (window.xmin - 1.0 < sp.window.xmin - tol || window.xmax > sp.window.xmax + tol ||
        window.ymin - 1.0 < sp.window.ymin - tol || window.ymax > sp.window.ymax + tol) {
        throw ValidationError(
            "tiling: window too close to the generation boundary; translates from outside "
            "the generated range could reach it");
    }

    const double cell = 1.0 / resolution;
    const int nx = static_cast<int>(std::ceil((window.xmax - window.xmin) / cell - 1e-12));
    const int ny = static_cast<int>(std::ceil((window.ymax - window.ymin) / cell - 1e-12));

    std::vector<int> counts(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), -1);
    auto sweep_rows = [&](int row_begin, int row_end) {
        for (int iy = row_begin; iy < row_end; ++iy) {
            const double cy = window.ymin + (iy + 0.5) * cell;
            if (cy > window.ymax) continue;
            for (int ix = 0; ix < nx; ++ix) {
                const double cx = window.xmin + (ix + 0.5) * cell;
                if (cx > window.xmax) continue;
                int count = 0;
                for (const auto& p : sp.points) {
                    if (p[0] <= cx && cx <= p[0] + 1.0 && p[1] <= cy && cy <= p[1] + 1.0) {
                        ++count;
                    }
                }
                counts[static_cast<std::size_t>(iy) * nx + ix] = count;
            }
        }
    };

    const int workers = std::min(threads, ny);
    if (workers <= 1) {
        sweep_rows(0, ny);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (ny + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int begin = w * chunk;
            const int end = std::min(ny, begin + chunk);
            if (begin < end) pool.emplace_back(sweep_rows, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    TilingReport report;
    report.min_cover = std::numeric_limits<int>::max();
    report.max_cover = 0;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const int count = counts[static_cast<std::size_t>(iy) * nx + ix];
            if (count < 0) continue;  // center fell outside the window
            report.min_cover = std::min(report.min_cover, count);
            report.max_cover = std::max(report.max_cover, count);
            if (count != 1) {
                const double cx = window.xmin + (ix + 0.5) * cell;
                const double cy = window.ymin + (iy + 0.5) * cell;
                report.violations.push_back({cx, cy, count});
            }
        }
    }
    if (report.min_cover == std::numeric_limits<int>::max()) report.min_cover = 0;
    report.is_tiling = report.violations.empty();
    return report;
}

std::optional<GammaFunction> check_commuting_strip(const Eigen::MatrixXcd& u_freq,
                                                   const std::vector<double>& freqs, double tol) {
    if (u_freq.rows() != u_freq.cols()) {
        throw ValidationError("check_commuting_strip: matrix must be square");
    }
    if (static_cast<int>(freqs.size()) != u_freq.rows()) {
        throw ValidationError("check_commuting_strip: frequency grid size mismatch");
    }
    if (!is_diagonal(u_freq, tol)) return std::nullopt;
    GammaFunction gamma;
    gamma.freqs = freqs;
    gamma.values = diagonal_phases(u_freq);
    return gamma;
}

JointSpectrum joint_spectrum_strip(const GammaFunction& gamma, int m_lo, int m_hi) {
    if (gamma.freqs.size() != gamma.values.size()) {
        throw ValidationError("joint_spectrum_strip: malformed gamma");
    }
    if (m_lo > m_hi) throw ValidationError("joint_spectrum_strip: empty band range");
    JointSpectrum sp;
    for (std::size_t k = 0; k < gamma.freqs.size(); ++k) {
        for (int m = m_lo; m <= m_hi; ++m) {
            sp.points.push_back({gamma.values[k] + m, gamma.freqs[k]});
        }
    }
    const auto [ylo, yhi] = std::minmax_element(gamma.freqs.begin(), gamma.freqs.end());
    sp.window = {static_cast<double>(m_lo) + 1.0, static_cast<double>(m_hi),
                 gamma.freqs.empty() ? 0.0 : *ylo, gamma.freqs.empty() ? 0.0 : *yhi};
    dedupe_points(sp);
    return sp;
}

}  // namespace momenta
