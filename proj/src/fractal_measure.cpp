#include "momenta/fractal_measure.hpp"

#include <algorithm>
#include <cmath>

#include "momenta/phase_arith.hpp"

namespace momenta {

double CantorLevel::interval_length() const { return std::pow(4.0, -level); }

double CantorLevel::mass_per_interval() const { return std::pow(2.0, -level); }

CantorLevel cantor_level(int n) {
    if (n < 1 || n > 12) throw ValidationError("cantor_level: level must be in 1..12");
    CantorLevel lvl;
    lvl.level = n;
    const std::size_t count = std::size_t{1} << n;
    lvl.left_endpoints.reserve(count);
    for (std::size_t bits = 0; bits < count; ++bits) {
        double x = 0.0;
        for (int k = 0; k < n; ++k) {
            if (bits >> k & 1u) x += 2.0 * std::pow(4.0, -(k + 1));
        }
        lvl.left_endpoints.push_back(x);
    }
    std::sort(lvl.left_endpoints.begin(), lvl.left_endpoints.end());
    return lvl;
}

LambdaSet lambda_set(int n) {
    if (n < 1 || n > 12) throw ValidationError("lambda_set: level must be in 1..12");
    LambdaSet set;
    set.level = n;
    const std::size_t count = std::size_t{1} << n;
    set.values.reserve(count);
    for (std::size_t bits = 0; bits < count; ++bits) {
        std::int64_t v = 0;
        std::int64_t pow4 = 1;
        for (int k = 0; k < n; ++k) {
            if (bits >> k & 1u) v += pow4;
            pow4 *= 4;
        }
        set.values.push_back(v);
    }
    std::sort(set.values.begin(), set.values.end());
    return set;
}

std::complex<double> cantor_fourier(double t, int depth) {
    if (depth < 1) throw ValidationError("cantor_fourier: depth must be >= 1");
    std::complex<double> product = 1.0;
    double scale = 0.25;
    for (int k = 0; k < depth; ++k) {
        product *= 0.5 * (1.0 + unit_phase(-2.0 * t * scale));
        scale *= 0.25;
    }
    return product;
}

GramResult gram_matrix(const LambdaSet& lambdas, int depth) {
    if (depth < 4 * lambdas.level) {
        throw ValidationError("gram_matrix: depth must be at least 4 * level");
    }
    const int n = static_cast<int>(lambdas.values.size());
    GramResult result;
    result.gram.resize(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const double diff = static_cast<double>(lambdas.values[static_cast<std::size_t>(k)] -
                                                    lambdas.values[static_cast<std::size_t>(j)]);
            result.gram(j, k) = cantor_fourier(diff, depth);
        }
    }
    result.max_defect =
        (result.gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    return result;
}

std::optional<std::vector<double>> check_commuting_fractal(const Eigen::MatrixXcd& u, double tol) {
    if (u.rows() != u.cols()) throw ValidationError("check_commuting_fractal: matrix not square");
    const auto n = static_cast<std::size_t>(u.rows());
    if (n == 0 || (n & (n - 1)) != 0) {
        throw ValidationError("check_commuting_fractal: dimension must be 2^n");
    }
    for (int i = 0; i < u.rows(); ++i) {
        for (int j = 0; j < u.cols(); ++j) {
            if (i != j && std::abs(u(i, j)) > tol) return std::nullopt;
        }
    }
    std::vector<double> gamma(n);
    for (int i = 0; i < u.rows(); ++i) {
        gamma[static_cast<std::size_t>(i)] = frac_mod1(std::arg(u(i, i)) / two_pi);
    }
    return gamma;
}

JointSpectrum joint_spectrum_fractal(const std::vector<double>& gamma, const LambdaSet& lambdas,
                                     int m_lo, int m_hi) {
    if (gamma.size() != lambdas.values.size()) {
        throw ValidationError("joint_spectrum_fractal: gamma size does not match lambda set");
    }
    if (m_lo > m_hi) throw ValidationError("joint_spectrum_fractal: empty band range");
    for (double g : gamma) {
        if (g < 0.0 || g >= 1.0) {
            throw ValidationError("joint_spectrum_fractal: gamma values must lie in [0,1)");
        }
    }
    JointSpectrum sp;
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        for (int m = m_lo; m <= m_hi; ++m) {
            sp.points.push_back({gamma[k] + m, static_cast<double>(lambdas.values[k])});
        }
    }
    sp.window = {static_cast<double>(m_lo) + 1.0, static_cast<double>(m_hi), 0.0,
                 static_cast<double>(lambdas.values.back())};
    std::sort(sp.points.begin(), sp.points.end());
    return sp;
}

double joint_gram_defect(const std::vector<double>& gamma, const LambdaSet& lambdas, int m_lo,
                         int m_hi, int depth) {
    if (gamma.size() != lambdas.values.size()) {
        throw ValidationError("joint_gram_defect: gamma size does not match lambda set");
    }
    struct Entry {
        double x;
        std::int64_t lambda;
    };
    std::vector<Entry> basis;
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        for (int m = m_lo; m <= m_hi; ++m) {
            basis.push_back({gamma[k] + m, lambdas.values[k]});
        }
    }
    const std::complex<double> i2pi(0.0, two_pi);
    double defect = 0.0;
    for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const double dx = basis[b].x - basis[a].x;
            std::complex<double> x_factor;
            if (dx == 0.0) {
                x_factor = 1.0;
            } else {
                x_factor = (unit_phase(dx) - 1.0) / (i2pi * dx);
            }
            const std::complex<double> mu_factor =
                cantor_fourier(static_cast<double>(basis[b].lambda - basis[a].lambda), depth);
            std::complex<double> entry = x_factor * mu_factor;
            if (a == b) entry -= 1.0;
            defect = std::max(defect, std::abs(entry));
        }
    }
    return defect;
}

}  // namespace momenta
