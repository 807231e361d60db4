#include "momenta/selfadjoint_extensions.hpp"

#include <array>
#include <cmath>

#include "momenta/differentiation.hpp"

namespace momenta {

namespace {

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

double envelope(DeficiencySign sign, const IntervalConfig& interval, double x) {
    return sign == DeficiencySign::plus ? std::exp(two_pi * (interval.beta - x))
                                        : std::exp(two_pi * (x - interval.alpha));
}

}  // namespace

DeficiencyVector deficiency_vector(DeficiencySign sign, const Eigen::VectorXcd& h,
                                   const IntervalConfig& interval, int grid_size) {
    interval.validate();
    if (grid_size < 8) throw ValidationError("deficiency_vector: grid too small");
    if (h.size() == 0 || h.norm() == 0.0) {
        throw ValidationError("deficiency_vector: h must be nonzero");
    }
    if (h.size() % 2 == 0) {
        throw ValidationError("deficiency_vector: h dimension must be odd (2N+1)");
    }

    DeficiencyVector d;
    d.sign = sign;
    d.h = h;
    d.samples.interval = interval;
    d.samples.truncation = FourierTruncation{(static_cast<int>(h.size()) - 1) / 2};
    d.samples.values.resize(grid_size, h.size());
    for (int i = 0; i < grid_size; ++i) {
        d.samples.values.row(i) = envelope(sign, interval, d.samples.node(i)) * h.transpose();
    }

    // (P -+ i) f, derivative by 4th-order finite differences
    const GridFunction deriv = fd_momentum_derivative(d.samples);
    const std::complex<double> shift =
        sign == DeficiencySign::plus ? std::complex<double>(0.0, 1.0)
                                     : std::complex<double>(0.0, -1.0);
    GridFunction res = deriv;
    res.values -= shift * d.samples.values;
    d.residual = res.norm() / d.samples.norm();

    // ||f||^2 by composite Gauss-Legendre of the known envelope
    const double cell = d.samples.step();
    double acc = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        for (int t = 0; t < 4; ++t) {
            const double x = interval.alpha + (i + kGaussNode[static_cast<std::size_t>(t)]) * cell;
            const double e = envelope(sign, interval, x);
            acc += kGaussWeight[static_cast<std::size_t>(t)] * cell * e * e;
        }
    }
    d.norm_squared = acc * h.squaredNorm();
    return d;
}

namespace {

BoundaryUnitary cayley_apply(const BoundaryUnitary& input, const IntervalConfig& interval,
                             bool to_vn) {
    interval.validate();
    const int dim = input.dimension();
    const double e2pl = std::exp(two_pi * interval.length());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);

    Eigen::MatrixXcd denom = to_vn ? (e2pl * id - input.matrix()).eval()
                                   : (e2pl * id + input.matrix()).eval();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(denom);
    const double rcond = lu.rcond();
    if (rcond < 1e-12) {
        throw NumericalError("cayley: denominator is ill conditioned");
    }
    Eigen::MatrixXcd out;
    if (to_vn) {
        // (e^{2piL} - V_B)^{-1} (e^{2piL} V_B - 1)
        out = lu.solve(e2pl * input.matrix() - id);
    } else {
        // (1 + e^{2piL} V_vN) (e^{2piL} + V_vN)^{-1}: right division via
        // the transposed system
        Eigen::MatrixXcd numer = id + e2pl * input.matrix();
        out = denom.transpose().partialPivLu().solve(numer.transpose()).transpose();
    }
    return {input.truncation(), std::move(out)};
}

}  // namespace

BoundaryUnitary cayley_boundary_to_vn(const BoundaryUnitary& v_b, const IntervalConfig& interval) {
    return cayley_apply(v_b, interval, true);
}

BoundaryUnitary cayley_vn_to_boundary(const BoundaryUnitary& v_vn,
                                      const IntervalConfig& interval) {
    return cayley_apply(v_vn, interval, false);
}

Eigen::VectorXcd endpoint_value(const GridFunction& f) {
    f.validate();
    const int grid = f.grid_size();
    const int points = std::min(8, grid);
    // Lagrange extrapolation from the last `points` samples to x = beta.
    // In the scaled variable the target sits one step beyond the last node.
    Eigen::VectorXcd val = Eigen::VectorXcd::Zero(f.values.cols());
    for (int a = 0; a < points; ++a) {
        double weight = 1.0;
        for (int b = 0; b < points; ++b) {
            if (b == a) continue;
            weight *= static_cast<double>(points - b) / static_cast<double>(a - b);
        }
        val += weight * f.values.row(grid - points + a).transpose();
    }
    return val;
}

bool domain_check(const GridFunction& f, const BoundaryUnitary& v, double tol) {
    f.validate();
    if (v.truncation().max_mode != f.truncation.max_mode) {
        throw ValidationError("domain_check: truncation mismatch");
    }
    const double fnorm = f.norm();
    if (fnorm == 0.0) return true;
    const Eigen::VectorXcd at_beta = endpoint_value(f);
    const Eigen::VectorXcd v_at_alpha = v.matrix() * f.values.row(0).transpose();
    return (at_beta - v_at_alpha).norm() <= tol * fnorm;
}

}  // namespace momenta
