#ifndef MOMENTA_COMMUTING_PAIRS_HPP
#define MOMENTA_COMMUTING_PAIRS_HPP

#include <array>
#include <optional>
#include <vector>

#include "momenta/boundary_unitary.hpp"

namespace momenta {

/// Which factor of the commuting pair is scalar. In the u_scalar case
/// U = e(alpha) I and V is diagonal with phases beta_m; v_scalar is the
/// mirrored case.
enum class SquareCase { u_scalar, v_scalar };

struct CommutingPairSpec {
    SquareCase case_tag = SquareCase::u_scalar;
    double alpha = 0.0;
    int max_mode = 0;
    std::vector<double> beta;  // indexed 0..2N for modes -N..N

    double beta_of_mode(int m) const;
    void validate() const;
};

/// Classifies (U, V) as a commuting pair on the square: accepted iff one
/// factor is scalar and the other diagonal, within tol entrywise. When
/// both are scalar the u_scalar case is reported.
std::optional<CommutingPairSpec> check_commuting_square(const BoundaryUnitary& u,
                                                        const BoundaryUnitary& v, double tol);

struct Window2D {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

/// 2D point set with the box on which translate generation is complete:
/// every lattice point whose coordinates fall inside `window` is present.
struct JointSpectrum {
    std::vector<std::array<double, 2>> points;
    Window2D window;
};

/// Joint spectrum of the commuting pair: (alpha+m, beta_m+n) in the
/// u_scalar case, (beta_n+m, alpha+n) in the v_scalar case. The mode
/// index runs over m_lo..m_hi and must stay within the truncation; the
/// free index runs over n_lo..n_hi.
JointSpectrum joint_spectrum_square(const CommutingPairSpec& spec, int m_lo, int m_hi, int n_lo,
                                    int n_hi);

/// Detects a rotation boundary condition: r with beta_m = <r m> for all
/// modes, when one exists. The candidate is beta at mode 1, verified
/// across the range.
std::optional<double> detect_geometric(const CommutingPairSpec& spec, double tol);

struct TilingReport {
    bool is_tiling = false;
    int min_cover = 0;
    int max_cover = 0;
    struct Cell {
        double cx = 0.0;
        double cy = 0.0;
        int count = 0;
    };
    std::vector<Cell> violations;
};

/// Counts unit-square translates covering each cell center of a raster
/// of the window at resolution 1/K. Null-set overlaps are invisible to
/// center sampling, which is the intended reading of "overlaps are null
/// sets". The window plus a unit margin must lie inside the spectrum's
/// generation box. Raster rows are independent; threads > 1 splits them
/// across workers with index-addressed writes, so results do not depend
/// on the thread count.
TilingReport tiling_check(const JointSpectrum& points, const Window2D& window,
                          int resolution = 64, int threads = 1);

/// Borel phase function sampled on a bounded uniform frequency grid.
struct GammaFunction {
    std::vector<double> freqs;
    std::vector<double> values;  // in [0,1)
};

/// Strip classification: accepts U given on the sampled frequency basis
/// iff it is diagonal within tol, returning gamma(lambda_k) read off the
/// diagonal phases.
std::optional<GammaFunction> check_commuting_strip(const Eigen::MatrixXcd& u_freq,
                                                   const std::vector<double>& freqs, double tol);

/// Points (gamma(lambda_k) + m, lambda_k) for m in m_lo..m_hi.
JointSpectrum joint_spectrum_strip(const GammaFunction& gamma, int m_lo, int m_hi);

}  // namespace momenta

#endif
