#ifndef MOMENTA_BOUNDARY_UNITARY_HPP
#define MOMENTA_BOUNDARY_UNITARY_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "momenta/common.hpp"
#include "momenta/phase_arith.hpp"

namespace momenta {

/// Symmetric Fourier mode window {-N, ..., N} of L^2[0,1].
struct FourierTruncation {
    int max_mode = 0;

    int dimension() const { return 2 * max_mode + 1; }
    int index_of(int mode) const { return mode + max_mode; }
    int mode_of(int index) const { return index - max_mode; }
    void validate() const;
};

/// A unitary on the truncated Fourier basis e_n(y) = e(ny), |n| <= N.
/// Column j of the matrix is the image of mode j - N. Construction
/// enforces a unitarity defect (operator norm of V*V - I) of at most
/// 1e-10; callers can rely on the matrix being unitary.
class BoundaryUnitary {
public:
    BoundaryUnitary(FourierTruncation truncation, Eigen::MatrixXcd matrix,
                    bool reduced_mod_one = false);

    const FourierTruncation& truncation() const { return truncation_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    int dimension() const { return truncation_.dimension(); }
    double unitarity_defect() const { return unitarity_defect_; }

    /// Set when a constructor reduced an out-of-range phase mod 1.
    bool reduced_mod_one() const { return reduced_mod_one_; }

private:
    FourierTruncation truncation_;
    Eigen::MatrixXcd matrix_;
    double unitarity_defect_ = 0.0;
    bool reduced_mod_one_ = false;
};

/// Operator norm of V*V - I (largest eigenvalue magnitude of a Hermitian matrix).
double unitarity_defect_of(const Eigen::MatrixXcd& m);

/// Nearest unitary in Frobenius norm (polar factor).
Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& m);

/// Translation g(y) -> g(<y+r>): diagonal with entries e(nr).
BoundaryUnitary make_rotation(double r, int max_mode);

/// V g(y) = e(theta(y)) g(<y+r>) for a trigonometric polynomial theta.
/// theta_coeffs holds the Fourier coefficients of theta indexed -d..d
/// (size 2d+1). The multiplication operator is assembled on the enlarged
/// truncation N+d, cut to N, and polar-projected when the cut's
/// unitarity defect exceeds 1e-10.
BoundaryUnitary make_twisted_rotation(const std::vector<std::complex<double>>& theta_coeffs,
                                      double r, int max_mode);

/// Diagonal with entries e(r_n); phases listed for modes -N..N.
BoundaryUnitary make_diagonal(const std::vector<double>& phases, int max_mode);

/// g(y) -> g(1-y): sends mode n to mode -n.
BoundaryUnitary make_reflection(int max_mode);

/// e(theta) * I.
BoundaryUnitary make_scalar(double theta, int max_mode);

/// Eigenphase/eigenvector decomposition of a boundary unitary,
/// the finite stand-in for its projection-valued measure.
/// Phases live in [0,1), sorted ascending, with phases within 1e-12 of
/// 1 mapped to 0 (the atom sits at 0, not 1). Columns of `vectors` are
/// the matching orthonormal eigenvectors.
struct SpectralModel {
    std::vector<double> phases;
    Eigen::MatrixXcd vectors;
    double residual = 0.0;

    int dimension() const { return static_cast<int>(phases.size()); }
};

SpectralModel eigendecompose(const BoundaryUnitary& v);

/// Sum of e(phase_j) |h_j><h_j| — inverse of eigendecompose up to roundoff.
Eigen::MatrixXcd reconstruct(const SpectralModel& model);

/// True iff the sorted eigenphase multisets match within tol in
/// circular distance (minimized over cyclic alignments of the sorted
/// lists, so wrap-around at 0/1 cannot split a matched pair).
bool are_unitarily_equivalent(const BoundaryUnitary& u, const BoundaryUnitary& v, double tol);

/// Number of eigenphases within circular distance tol of `phase`.
int multiplicity_of_phase(const SpectralModel& model, double phase, double tol);

/// JSON matrix format {"n": max_mode, "re": [[..]], "im": [[..]]}.
nlohmann::json matrix_to_json(const BoundaryUnitary& v);
BoundaryUnitary matrix_from_json(const nlohmann::json& j);

}  // namespace momenta

#endif
