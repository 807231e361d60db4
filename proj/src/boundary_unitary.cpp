#include "momenta/boundary_unitary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

namespace momenta {

namespace {
constexpr double kUnitarityTolerance = 1e-10;
constexpr double kPhaseSnap = 1e-12;
}  // namespace

void FourierTruncation::validate() const {
    if (max_mode < 0) throw ValidationError("truncation requires max_mode >= 0");
}

double unitarity_defect_of(const Eigen::MatrixXcd& m) {
    const Eigen::MatrixXcd defect =
        m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(defect, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalError("unitarity defect: eigensolver failed");
    }
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

BoundaryUnitary::BoundaryUnitary(FourierTruncation truncation, Eigen::MatrixXcd matrix,
                                 bool reduced_mod_one)
    : truncation_(truncation), matrix_(std::move(matrix)), reduced_mod_one_(reduced_mod_one) {
    truncation_.validate();
    const int dim = truncation_.dimension();
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw ValidationError("boundary unitary: matrix shape does not match truncation");
    }
    unitarity_defect_ = unitarity_defect_of(matrix_);
    if (unitarity_defect_ > kUnitarityTolerance) {
        throw NumericalError("boundary unitary: unitarity defect " +
                             std::to_string(unitarity_defect_) + " exceeds 1e-10");
    }
}

BoundaryUnitary make_rotation(double r, int max_mode) {
    FourierTruncation t{max_mode};
    t.validate();
    bool reduced = false;
    if (r < 0.0 || r >= 1.0) {
        r = frac_mod1(r);
        reduced = true;
    }
    const int dim = t.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = -max_mode; n <= max_mode; ++n) {
        m(t.index_of(n), t.index_of(n)) = unit_phase(n * r);
    }
    return {t, std::move(m), reduced};
}

BoundaryUnitary make_diagonal(const std::vector<double>& phases, int max_mode) {
    FourierTruncation t{max_mode};
    t.validate();
    const int dim = t.dimension();
    if (static_cast<int>(phases.size()) != dim) {
        throw ValidationError("make_diagonal: need exactly 2N+1 phases");
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = unit_phase(phases[i]);
    return {t, std::move(m)};
}

BoundaryUnitary make_reflection(int max_mode) {
    FourierTruncation t{max_mode};
    t.validate();
    const int dim = t.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = -max_mode; n <= max_mode; ++n) {
        m(t.index_of(-n), t.index_of(n)) = 1.0;
    }
    return {t, std::move(m)};
}

BoundaryUnitary make_scalar(double theta, int max_mode) {
    FourierTruncation t{max_mode};
    t.validate();
    const int dim = t.dimension();
    Eigen::MatrixXcd m = unit_phase(theta) * Eigen::MatrixXcd::Identity(dim, dim);
    return {t, std::move(m)};
}

BoundaryUnitary make_twisted_rotation(const std::vector<std::complex<double>>& theta_coeffs,
                                      double r, int max_mode) {
    FourierTruncation t{max_mode};
    t.validate();
    if (theta_coeffs.empty() || theta_coeffs.size() % 2 == 0) {
        throw ValidationError("make_twisted_rotation: coefficient list must have odd size 2d+1");
    }
    const int degree = (static_cast<int>(theta_coeffs.size()) - 1) / 2;
    if (degree > max_mode) {
        throw ValidationError("make_twisted_rotation: twist degree exceeds truncation");
    }
    bool reduced = false;
    if (r < 0.0 || r >= 1.0) {
        r = frac_mod1(r);
        reduced = true;
    }

    // Fourier coefficients of e(theta(y)) by trapezoid quadrature on a
    // fine periodic grid; spectrally accurate for trigonometric theta.
    const int big = max_mode + degree;
    const int grid = 4096;
    std::vector<std::complex<double>> samples(grid);
    for (int g = 0; g < grid; ++g) {
        const double y = static_cast<double>(g) / grid;
        std::complex<double> theta_y = 0.0;
        for (int k = -degree; k <= degree; ++k) {
            theta_y += theta_coeffs[static_cast<std::size_t>(k + degree)] * unit_phase(k * y);
        }
        if (std::abs(theta_y.imag()) > 1e-9) {
            throw ValidationError("make_twisted_rotation: theta must be real-valued");
        }
        samples[static_cast<std::size_t>(g)] = unit_phase(theta_y.real());
    }
    std::vector<std::complex<double>> mult_coeff(static_cast<std::size_t>(4 * big + 1));
    for (int k = -2 * big; k <= 2 * big; ++k) {
        std::complex<double> c = 0.0;
        for (int g = 0; g < grid; ++g) {
            c += samples[static_cast<std::size_t>(g)] *
                 unit_phase(-static_cast<double>(k) * g / grid);
        }
        mult_coeff[static_cast<std::size_t>(k + 2 * big)] = c / static_cast<double>(grid);
    }

    // enlarged (multiplication) x (translation), then cut to |m|,|n| <= N
    const int big_dim = 2 * big + 1;
    Eigen::MatrixXcd enlarged(big_dim, big_dim);
    for (int mrow = -big; mrow <= big; ++mrow) {
        for (int ncol = -big; ncol <= big; ++ncol) {
            enlarged(mrow + big, ncol + big) =
                mult_coeff[static_cast<std::size_t>(mrow - ncol + 2 * big)] * unit_phase(ncol * r);
        }
    }
    const int dim = t.dimension();
    Eigen::MatrixXcd cut = enlarged.block(big - max_mode, big - max_mode, dim, dim);
    if (unitarity_defect_of(cut) > kUnitarityTolerance) {
        cut = polar_unitary(cut);
    }
    return {t, std::move(cut), reduced};
}

SpectralModel eigendecompose(const BoundaryUnitary& v) {
    // A unitary matrix is normal, so its Schur form is diagonal up to
    // roundoff and the Schur basis is an orthonormal eigenbasis.
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(v.matrix(), true);
    if (schur.info() != Eigen::Success) {
        throw NumericalError("eigendecompose: Schur iteration did not converge");
    }
    const int dim = v.dimension();
    std::vector<double> phases(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) {
        const std::complex<double> w = schur.matrixT()(j, j);
        double phase = std::arg(w) / two_pi;
        phase = frac_mod1(phase);
        if (phase >= 1.0 - kPhaseSnap) phase = 0.0;
        phases[static_cast<std::size_t>(j)] = phase;
    }

    std::vector<int> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return phases[a] < phases[b]; });

    SpectralModel model;
    model.phases.resize(static_cast<std::size_t>(dim));
    model.vectors.resize(dim, dim);
    for (int j = 0; j < dim; ++j) {
        model.phases[static_cast<std::size_t>(j)] = phases[static_cast<std::size_t>(order[j])];
        model.vectors.col(j) = schur.matrixU().col(order[j]);
    }

    double residual = 0.0;
    for (int j = 0; j < dim; ++j) {
        const double r =
            (v.matrix() * model.vectors.col(j) - unit_phase(model.phases[j]) * model.vectors.col(j))
                .norm();
        residual = std::max(residual, r);
    }
    model.residual = residual;
    if (residual > 1e-9) {
        throw NumericalError("eigendecompose: eigenpair residual " + std::to_string(residual));
    }
    return model;
}

Eigen::MatrixXcd reconstruct(const SpectralModel& model) {
    const int dim = model.dimension();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        m += unit_phase(model.phases[static_cast<std::size_t>(j)]) * model.vectors.col(j) *
             model.vectors.col(j).adjoint();
    }
    return m;
}

bool are_unitarily_equivalent(const BoundaryUnitary& u, const BoundaryUnitary& v, double tol) {
    if (u.dimension() != v.dimension()) {
        throw ValidationError("are_unitarily_equivalent: dimension mismatch");
    }
    const std::vector<double> a = eigendecompose(u).phases;
    const std::vector<double> b = eigendecompose(v).phases;
    const int n = static_cast<int>(a.size());
    // Sorted circular multisets match iff some cyclic alignment matches.
    for (int shift = 0; shift < n; ++shift) {
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            worst = std::max(worst, circular_distance(a[j], b[(j + shift) % n]));
            if (worst > tol) break;
        }
        if (worst <= tol) return true;
    }
    return false;
}

int multiplicity_of_phase(const SpectralModel& model, double phase, double tol) {
    int count = 0;
    for (double p : model.phases) {
        if (circular_distance(p, phase) <= tol) ++count;
    }
    return count;
}

nlohmann::json matrix_to_json(const BoundaryUnitary& v) {
    const int dim = v.dimension();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < dim; ++i) {
        nlohmann::json row_re = nlohmann::json::array();
        nlohmann::json row_im = nlohmann::json::array();
        for (int j = 0; j < dim; ++j) {
            row_re.push_back(v.matrix()(i, j).real());
            row_im.push_back(v.matrix()(i, j).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return {{"n", v.truncation().max_mode}, {"re", std::move(re)}, {"im", std::move(im)}};
}

BoundaryUnitary matrix_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("re") || !j.contains("im")) {
        throw ValidationError("matrix json: expected fields n, re, im");
    }
    const int max_mode = j.at("n").get<int>();
    FourierTruncation t{max_mode};
    t.validate();
    const int dim = t.dimension();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<int>(re.size()) != dim || static_cast<int>(im.size()) != dim) {
        throw ValidationError("matrix json: row count does not match 2n+1");
    }
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const auto& row_re = re.at(static_cast<std::size_t>(r));
        const auto& row_im = im.at(static_cast<std::size_t>(r));
        if (static_cast<int>(row_re.size()) != dim || static_cast<int>(row_im.size()) != dim) {
            throw ValidationError("matrix json: column count does not match 2n+1");
        }
        for (int c = 0; c < dim; ++c) {
            m(r, c) = {row_re.at(static_cast<std::size_t>(c)).get<double>(),
                       row_im.at(static_cast<std::size_t>(c)).get<double>()};
        }
    }
    return {t, std::move(m)};
}

}  // namespace momenta
