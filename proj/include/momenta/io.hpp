#ifndef MOMENTA_IO_HPP
#define MOMENTA_IO_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "momenta/commuting_pairs.hpp"
#include "momenta/fractal_measure.hpp"
#include "momenta/momentum_operator.hpp"

namespace momenta {

/// Shortest-faithful decimal with up to 17 significant digits.
std::string format_double(double v);

/// CSV "value,multiplicity,band" with header row.
std::string spectrum_to_csv(const MomentumSpectrum& sp);

/// CSV "x,y" with header row.
std::string joint_spectrum_to_csv(const JointSpectrum& sp);

/// Single comma-separated line, e.g. "0,1,4,5".
std::string lambda_set_to_csv(const LambdaSet& set);

nlohmann::json spectrum_to_json(const MomentumSpectrum& sp);
nlohmann::json joint_spectrum_to_json(const JointSpectrum& sp);
nlohmann::json tiling_report_to_json(const TilingReport& report);

}  // namespace momenta

#endif
