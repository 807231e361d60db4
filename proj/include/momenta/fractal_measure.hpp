#ifndef MOMENTA_FRACTAL_MEASURE_HPP
#define MOMENTA_FRACTAL_MEASURE_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "momenta/commuting_pairs.hpp"
#include "momenta/common.hpp"

namespace momenta {

/// Level-n approximant of the quarter Cantor measure: 2^n intervals of
/// length 4^-n with left endpoints sum d_k 4^-k, digits in {0, 2}, each
/// carrying mass 2^-n.
struct CantorLevel {
    int level = 0;
    std::vector<double> left_endpoints;  // sorted, 2^n entries

    double interval_length() const;
    double mass_per_interval() const;
};

CantorLevel cantor_level(int n);

/// The measure's exponential spectrum at level n: the 2^n integers
/// sum_{k<n} d_k 4^k with digits in {0, 1}, sorted.
struct LambdaSet {
    int level = 0;
    std::vector<std::int64_t> values;
};

LambdaSet lambda_set(int n);

/// Depth-truncated transform of the Cantor measure,
/// prod_{k=1..depth} (1 + e(-2 t 4^-k)) / 2. Each factor vanishes
/// exactly when 2t 4^-k is a half-integer, which is what makes the
/// lambda_set exponentials orthogonal.
std::complex<double> cantor_fourier(double t, int depth);

struct GramResult {
    Eigen::MatrixXcd gram;
    double max_defect = 0.0;  // ||G - I||_max
};

/// Gram matrix G_jk = cantor_fourier(lambda_k - lambda_j, depth) of the
/// exponential family. Requires depth >= 4 * level so every vanishing
/// factor is inside the product.
GramResult gram_matrix(const LambdaSet& lambdas, int depth);

/// Accepts U on the finite {e_lambda} basis iff diagonal within tol,
/// returning the eigenphase list gamma(lambda).
std::optional<std::vector<double>> check_commuting_fractal(const Eigen::MatrixXcd& u, double tol);

/// Points (gamma(lambda) + m, lambda) for the fractal joint spectrum.
JointSpectrum joint_spectrum_fractal(const std::vector<double>& gamma, const LambdaSet& lambdas,
                                     int m_lo, int m_hi);

/// Max Gram defect of the exponentials e_{gamma(lambda)+m} (x) e_lambda
/// over Lambda_gamma under (Lebesgue on [0,1]) (x) mu. The x-factor is
/// the closed-form integral of a unit exponential, the mu-factor is
/// cantor_fourier.
double joint_gram_defect(const std::vector<double>& gamma, const LambdaSet& lambdas, int m_lo,
                         int m_hi, int depth);

}  // namespace momenta

#endif
