#include "momenta/grid_function.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace momenta {

void GridFunction::validate() const {
    interval.validate();
    truncation.validate();
    if (values.rows() < 2) throw ValidationError("grid function: need at least 2 samples");
    if (values.cols() != truncation.dimension()) {
        throw ValidationError("grid function: column count does not match truncation");
    }
}

double GridFunction::norm() const {
    const double cell = step();
    return std::sqrt(cell * values.squaredNorm());
}

std::complex<double> inner(const GridFunction& f, const GridFunction& g) {
    if (f.grid_size() != g.grid_size() || f.values.cols() != g.values.cols()) {
        throw ValidationError("inner: shape mismatch");
    }
    return f.step() * (f.values.conjugate().cwiseProduct(g.values)).sum();
}

GridFunction zero_like(const GridFunction& f) {
    GridFunction out = f;
    out.values.setZero();
    return out;
}

nlohmann::json grid_to_json(const GridFunction& f) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < f.grid_size(); ++i) {
        nlohmann::json row_re = nlohmann::json::array();
        nlohmann::json row_im = nlohmann::json::array();
        for (int c = 0; c < f.values.cols(); ++c) {
            row_re.push_back(f.values(i, c).real());
            row_im.push_back(f.values(i, c).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return {{"interval", {{"alpha", f.interval.alpha}, {"beta", f.interval.beta}}},
            {"grid_size", f.grid_size()},
            {"truncation", f.truncation.max_mode},
            {"re", std::move(re)},
            {"im", std::move(im)}};
}

GridFunction grid_from_json(const nlohmann::json& j) {
    for (const char* key : {"interval", "grid_size", "truncation", "re", "im"}) {
        if (!j.contains(key)) {
            throw ValidationError(std::string("grid json: missing field ") + key);
        }
    }
    GridFunction f;
    f.interval.alpha = j.at("interval").at("alpha").get<double>();
    f.interval.beta = j.at("interval").at("beta").get<double>();
    f.truncation.max_mode = j.at("truncation").get<int>();
    const int grid = j.at("grid_size").get<int>();
    const int dim = f.truncation.dimension();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<int>(re.size()) != grid || static_cast<int>(im.size()) != grid) {
        throw ValidationError("grid json: row count does not match grid_size");
    }
    f.values.resize(grid, dim);
    for (int r = 0; r < grid; ++r) {
        const auto& row_re = re.at(static_cast<std::size_t>(r));
        const auto& row_im = im.at(static_cast<std::size_t>(r));
        if (static_cast<int>(row_re.size()) != dim || static_cast<int>(row_im.size()) != dim) {
            throw ValidationError("grid json: column count does not match truncation");
        }
        for (int c = 0; c < dim; ++c) {
            f.values(r, c) = {row_re.at(static_cast<std::size_t>(c)).get<double>(),
                              row_im.at(static_cast<std::size_t>(c)).get<double>()};
        }
    }
    f.validate();
    return f;
}

}  // namespace momenta
