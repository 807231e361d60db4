#include "momenta/io.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace momenta {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string spectrum_to_csv(const MomentumSpectrum& sp) {
    std::string out = "value,multiplicity,band\n";
    for (const SpectrumPoint& p : sp.points) {
        out += format_double(p.value);
        out += ',';
        out += std::to_string(p.multiplicity);
        out += ',';
        out += std::to_string(p.band);
        out += '\n';
    }
    return out;
}

std::string joint_spectrum_to_csv(const JointSpectrum& sp) {
    std::string out = "x,y\n";
    for (const auto& p : sp.points) {
        out += format_double(p[0]);
        out += ',';
        out += format_double(p[1]);
        out += '\n';
    }
    return out;
}

std::string lambda_set_to_csv(const LambdaSet& set) {
    std::string out;
    for (std::size_t i = 0; i < set.values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(set.values[i]);
    }
    out += '\n';
    return out;
}

nlohmann::json spectrum_to_json(const MomentumSpectrum& sp) {
    nlohmann::json points = nlohmann::json::array();
    for (const SpectrumPoint& p : sp.points) {
        points.push_back({{"value", p.value}, {"multiplicity", p.multiplicity}, {"band", p.band}});
    }
    return {{"points", std::move(points)},
            {"interval", {{"alpha", sp.interval.alpha}, {"beta", sp.interval.beta}}},
            {"m_lo", sp.m_lo},
            {"m_hi", sp.m_hi}};
}

nlohmann::json joint_spectrum_to_json(const JointSpectrum& sp) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : sp.points) {
        points.push_back({p[0], p[1]});
    }
    return {{"points", std::move(points)},
            {"window",
             {{"xmin", sp.window.xmin},
              {"xmax", sp.window.xmax},
              {"ymin", sp.window.ymin},
              {"ymax", sp.window.ymax}}}};
}

nlohmann::json tiling_report_to_json(const TilingReport& report) {
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& cell : report.violations) {
        violations.push_back({{"cx", cell.cx}, {"cy", cell.cy}, {"count", cell.count}});
    }
    return {{"is_tiling", report.is_tiling},
            {"min_cover", report.min_cover},
            {"max_cover", report.max_cover},
            {"violations", std::move(violations)}};
}

}  // namespace momenta
