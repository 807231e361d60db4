#ifndef MOMENTA_SELFADJOINT_EXTENSIONS_HPP
#define MOMENTA_SELFADJOINT_EXTENSIONS_HPP

#include "momenta/grid_function.hpp"

namespace momenta {

enum class DeficiencySign { plus, minus };

/// Deficiency vector of the minimal momentum operator,
/// f_+(x) = e^{2pi(beta-x)} h in D_+ and f_-(x) = e^{2pi(x-alpha)} h in
/// D_-, so that (P -+ i) f_± = 0. The scaling matches the norm identity
/// 4pi ||f_+||^2 = (e^{4pi L} - 1) ||h||^2.
struct DeficiencyVector {
    DeficiencySign sign = DeficiencySign::plus;
    Eigen::VectorXcd h;
    GridFunction samples;
    /// ||(P -+ i) f|| / ||f|| under 4th-order finite differences.
    double residual = 0.0;
    /// ||f||^2 by composite Gauss-Legendre of the closed form.
    double norm_squared = 0.0;
};

DeficiencyVector deficiency_vector(DeficiencySign sign, const Eigen::VectorXcd& h,
                                   const IntervalConfig& interval, int grid_size);

/// Boundary unitary -> von Neumann parameter,
/// V_vN = (e^{2piL} - V_B)^{-1} (e^{2piL} V_B - 1).
BoundaryUnitary cayley_boundary_to_vn(const BoundaryUnitary& v_b, const IntervalConfig& interval);

/// von Neumann parameter -> boundary unitary,
/// V_B = (1 + e^{2piL} V_vN) (e^{2piL} + V_vN)^{-1}.
BoundaryUnitary cayley_vn_to_boundary(const BoundaryUnitary& v_vn, const IntervalConfig& interval);

/// Tests the boundary condition f(beta) = V f(alpha). f(alpha) is the
/// first grid sample; f(beta) is recovered by one-sided polynomial
/// extrapolation from the last samples (machine-exact for band-limited
/// data well below Nyquist).
bool domain_check(const GridFunction& f, const BoundaryUnitary& v, double tol);

/// The extrapolated endpoint value f(beta).
Eigen::VectorXcd endpoint_value(const GridFunction& f);

}  // namespace momenta

#endif
