#ifndef MOMENTA_MOMENTUM_OPERATOR_HPP
#define MOMENTA_MOMENTUM_OPERATOR_HPP

#include <complex>
#include <utility>
#include <vector>

#include "momenta/grid_function.hpp"

namespace momenta {

/// exp(i * 2pi * w) for complex w.
std::complex<double> exp_i2pi(std::complex<double> w);

/// Action of the unitary group e(a P_V): out(x) = V^winding(x+a) f(<x+a>).
/// By default a must be an integer multiple of the grid step, where the
/// shift is an exact index permutation and integer matrix power. Other a
/// require allow_interpolation, which evaluates the trigonometric
/// interpolant of f at the shifted nodes.
GridFunction evolve(double a, const BoundaryUnitary& v, const GridFunction& f,
                    bool allow_interpolation = false);

struct SpectrumPoint {
    double value = 0.0;
    int multiplicity = 0;
    int band = 0;
};

/// Points (lambda_j + m) / (beta - alpha) for m in [m_lo, m_hi], sorted,
/// with coinciding values (within 1e-10) merged into one multiplicity.
struct MomentumSpectrum {
    std::vector<SpectrumPoint> points;
    IntervalConfig interval;
    int m_lo = 0;
    int m_hi = 0;
};

MomentumSpectrum spectrum(const SpectralModel& model, const IntervalConfig& interval, int m_lo,
                          int m_hi);

/// Sampled eigenfunction f(x) = e(lambda x) h. The pair (lambda, h) is
/// validated against V: e(L lambda) must be an eigenvalue with
/// eigenvector h within 1e-8.
GridFunction eigenfunction(double lambda, const Eigen::VectorXcd& h, const BoundaryUnitary& v,
                           const IntervalConfig& interval, int grid_size);

/// Grid data lifted to a continuum function adapted to V's spectral
/// model: each eigencomponent <h_j, f(x)> is detrended by
/// e(lambda_j (x-alpha)/L) and trig-interpolated, so the lift of a band
/// function is exact and every band coefficient is a plain DFT bin.
/// Both resolvent routes and the projections read grid data through
/// this lift, which is what makes them comparable at roundoff level.
class BandCoefficients {
public:
    BandCoefficients(const GridFunction& f, const SpectralModel& model);

    const SpectralModel& model() const { return model_; }
    const IntervalConfig& interval() const { return interval_; }
    int grid_size() const { return grid_; }
    int truncation_max_mode() const { return max_mode_; }

    /// Coefficient of the band function e((lambda_j + m)(x-alpha)/L) h_j.
    std::complex<double> coefficient(int j, int m) const;

    /// Modes representable on the grid: |m| <= max_band().
    int max_band() const { return (grid_ - 1) / 2; }

    /// Continuum evaluation of the lift at x.
    Eigen::VectorXcd evaluate(double x) const;

    /// Sample back onto the original grid.
    GridFunction synthesize() const;

    Eigen::MatrixXcd& raw() { return coeffs_; }
    const Eigen::MatrixXcd& raw() const { return coeffs_; }

private:
    SpectralModel model_;
    IntervalConfig interval_;
    int grid_ = 0;
    int max_mode_ = 0;
    Eigen::MatrixXcd coeffs_;  // row j, column = DFT bin
};

struct ResolventResult {
    GridFunction value;
    /// |Im z|^-1 times the L^2 mass of f outside the included bands.
    double tail_bound = 0.0;
};

/// Eigen-expansion resolvent over bands |m| <= m_bound.
ResolventResult resolvent_spectral(std::complex<double> z, const SpectralModel& model,
                                   const GridFunction& f, int m_bound);

/// Green's-function resolvent: quadrature of int G(x,s,z) f(s) ds with
/// composite 4-node Gauss-Legendre per grid cell. The kernel jumps at
/// s = x, which always falls on a cell edge for grid outputs.
GridFunction resolvent_greens(std::complex<double> z, const BoundaryUnitary& v,
                              const GridFunction& f);

/// Branch coefficients (c1, c2) of the Green's function, c1 on x < s and
/// c2 on s < x; c2 - c1 = -i 2pi I identically.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> greens_branch_coefficients(
    std::complex<double> z, const BoundaryUnitary& v, const IntervalConfig& interval);

struct BandContribution {
    int phase_index = 0;
    int band = 0;
    double point = 0.0;
};

/// Spectral projection onto (mu, nu): the span of the sampled
/// eigenfunctions e((lambda_j+m)(x-alpha)/L) h_j with point in (mu, nu).
/// The sampled family is exactly orthogonal in the discrete inner
/// product, so apply() is idempotent and selfadjoint to roundoff.
class SpectralProjection {
public:
    SpectralProjection(double mu, double nu, const SpectralModel& model,
                       const IntervalConfig& interval);

    const std::vector<BandContribution>& contributions() const { return contributions_; }
    double mu() const { return mu_; }
    double nu() const { return nu_; }

    GridFunction apply(const GridFunction& f) const;
    std::vector<std::complex<double>> component_coefficients(const GridFunction& f) const;

private:
    double mu_ = 0.0;
    double nu_ = 0.0;
    SpectralModel model_;
    IntervalConfig interval_;
    std::vector<BandContribution> contributions_;
};

SpectralProjection spectral_projection(double mu, double nu, const SpectralModel& model,
                                       const IntervalConfig& interval);

struct StoneResult {
    GridFunction value;
    /// Difference against a half-resolution quadrature, relative to ||f||.
    double quadrature_estimate = 0.0;
};

/// Stone's formula approximant (1/i2pi) int_mu^nu (R(a-ib) - R(a+ib)) da
/// at strip half-width b > 0, by composite 4-node Gauss-Legendre over
/// quad_points subintervals. Converges to the spectral projection as
/// b -> 0.
StoneResult stone_projection(double mu, double nu, const BoundaryUnitary& v, double b,
                             const GridFunction& f, int quad_points);

struct BandPointSet {
    int band = 0;
    std::vector<SpectrumPoint> points;
};

/// Groups a unit-interval spectrum by band [k, k+1). Every band's point
/// set shifted by -k coincides with the band-0 set.
std::vector<BandPointSet> band_partition(const MomentumSpectrum& spectrum);

}  // namespace momenta

#endif
