#ifndef MOMENTA_RNG_HPP
#define MOMENTA_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace momenta {

/// Deterministic random source. Gaussians are produced by Box-Muller on
/// mt19937_64 uniforms so streams do not depend on the standard library's
/// distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        // 53-bit mantissa in [0,1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    std::complex<double> complex_gaussian() { return {gaussian(), gaussian()}; }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-like random unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phases absorbed into Q.
inline Eigen::MatrixXcd random_unitary(int dim, Rng& rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        std::complex<double> d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : std::complex<double>(1.0, 0.0);
    }
    return q;
}

}  // namespace momenta

#endif
