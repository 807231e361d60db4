#ifndef MOMENTA_GRID_FUNCTION_HPP
#define MOMENTA_GRID_FUNCTION_HPP

#include <complex>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "momenta/boundary_unitary.hpp"
#include "momenta/phase_arith.hpp"

namespace momenta {

/// An H-valued function sampled on the uniform half-open grid
/// x_i = alpha + i L/G, i = 0..G-1. Row i of `values` holds the
/// H-coefficients of f(x_i) on the truncated Fourier basis.
struct GridFunction {
    IntervalConfig interval;
    FourierTruncation truncation;
    Eigen::MatrixXcd values;  // G x (2N+1)

    int grid_size() const { return static_cast<int>(values.rows()); }
    double step() const { return interval.length() / grid_size(); }
    double node(int i) const { return interval.alpha + i * step(); }

    /// Discrete L^2 norm: sqrt((L/G) sum_i |f(x_i)|^2).
    double norm() const;

    void validate() const;
};

/// Discrete L^2 inner product (L/G) sum_i <f(x_i), g(x_i)>.
std::complex<double> inner(const GridFunction& f, const GridFunction& g);

/// Zero function with the given shape.
GridFunction zero_like(const GridFunction& f);

/// JSON format {"interval": {"alpha", "beta"}, "grid_size", "truncation",
/// "re": [[..]], "im": [[..]]}.
nlohmann::json grid_to_json(const GridFunction& f);
GridFunction grid_from_json(const nlohmann::json& j);

}  // namespace momenta

#endif
