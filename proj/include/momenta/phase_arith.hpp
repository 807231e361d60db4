#ifndef MOMENTA_PHASE_ARITH_HPP
#define MOMENTA_PHASE_ARITH_HPP

#include <complex>
#include <cstdint>

#include "momenta/common.hpp"

namespace momenta {

/// The base interval [alpha, beta), alpha < beta.
struct IntervalConfig {
    double alpha = 0.0;
    double beta = 1.0;

    double length() const { return beta - alpha; }
    void validate() const;
};

/// r = frac + winding * (beta - alpha) with frac in [alpha, beta).
struct PhaseDecomposition {
    double frac = 0.0;
    std::int64_t winding = 0;
};

/// Splits r into its interval-periodic part and winding number.
/// Values within 1e-12 * length of the upper endpoint snap to the
/// next period (frac = alpha, winding incremented) so that grid
/// seams decompose deterministically.
PhaseDecomposition decompose(double r, const IntervalConfig& interval);

/// exp(i * 2pi * r), computed after reduction mod 1 so that
/// unit_phase(r + 1) == unit_phase(r) holds exactly.
std::complex<double> unit_phase(double r);

/// Fractional part in [0, 1).
double frac_mod1(double r);

/// Distance between two phases on the circle R/Z, in [0, 1/2].
double circular_distance(double a, double b);

}  // namespace momenta

#endif
