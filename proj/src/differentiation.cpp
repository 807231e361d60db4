#include "momenta/differentiation.hpp"

namespace momenta {

GridFunction spectral_momentum_derivative(const GridFunction& f, double detrend_lambda) {
    f.validate();
    const int grid = f.grid_size();
    const int dim = f.truncation.dimension();
    const double len = f.interval.length();

    Eigen::MatrixXcd detrended(grid, dim);
    for (int i = 0; i < grid; ++i) {
        detrended.row(i) = std::conj(unit_phase(detrend_lambda * f.node(i))) * f.values.row(i);
    }

    Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(grid, dim);
    for (int k = 0; k < grid; ++k) {
        for (int i = 0; i < grid; ++i) {
            coeffs.row(k) += unit_phase(-static_cast<double>(k) * i / grid) * detrended.row(i);
        }
    }
    coeffs /= static_cast<double>(grid);

    GridFunction out = zero_like(f);
    for (int k = 0; k < grid; ++k) {
        const int mode = (k <= (grid - 1) / 2) ? k : k - grid;
        const double freq = mode / len;
        for (int i = 0; i < grid; ++i) {
            out.values.row(i) +=
                freq * unit_phase(static_cast<double>(mode) * i / grid) * coeffs.row(k);
        }
    }
    for (int i = 0; i < grid; ++i) {
        const std::complex<double> trend = unit_phase(detrend_lambda * f.node(i));
        out.values.row(i) = trend * out.values.row(i) + detrend_lambda * f.values.row(i);
    }
    return out;
}

GridFunction fd_momentum_derivative(const GridFunction& f) {
    f.validate();
    const int grid = f.grid_size();
    if (grid < 5) throw ValidationError("fd derivative: need at least 5 samples");
    const double h = f.step();
    const std::complex<double> scale = 1.0 / (std::complex<double>(0.0, two_pi) * 12.0 * h);

    GridFunction out = zero_like(f);
    const auto& v = f.values;
    out.values.row(0) =
        scale * (-25.0 * v.row(0) + 48.0 * v.row(1) - 36.0 * v.row(2) + 16.0 * v.row(3) -
                 3.0 * v.row(4));
    out.values.row(1) =
        scale * (-3.0 * v.row(0) - 10.0 * v.row(1) + 18.0 * v.row(2) - 6.0 * v.row(3) + v.row(4));
    for (int i = 2; i < grid - 2; ++i) {
        out.values.row(i) = scale * (-v.row(i + 2) + 8.0 * v.row(i + 1) - 8.0 * v.row(i - 1) +
                                     v.row(i - 2));
    }
    out.values.row(grid - 2) = scale * (3.0 * v.row(grid - 1) + 10.0 * v.row(grid - 2) -
                                        18.0 * v.row(grid - 3) + 6.0 * v.row(grid - 4) -
                                        v.row(grid - 5));
    out.values.row(grid - 1) =
        scale * (25.0 * v.row(grid - 1) - 48.0 * v.row(grid - 2) + 36.0 * v.row(grid - 3) -
                 16.0 * v.row(grid - 4) + 3.0 * v.row(grid - 5));
    return out;
}

}  // namespace momenta
