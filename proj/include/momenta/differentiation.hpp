#ifndef MOMENTA_DIFFERENTIATION_HPP
#define MOMENTA_DIFFERENTIATION_HPP

#include "momenta/grid_function.hpp"

namespace momenta {

/// (1/i2pi) d/dx by Fourier differentiation after detrending with
/// e(detrend_lambda * x). The detrended samples must be periodic on the
/// interval for this to be spectrally accurate; for a band function with
/// eigenphase lambda_j pass any detrend_lambda with
/// detrend_lambda - lambda_j/L in Z/L.
GridFunction spectral_momentum_derivative(const GridFunction& f, double detrend_lambda);

/// (1/i2pi) d/dx by 4th-order finite differences, one-sided at the ends.
GridFunction fd_momentum_derivative(const GridFunction& f);

}  // namespace momenta

#endif
