#include "momenta/phase_arith.hpp"

#include <cmath>

namespace momenta {

void IntervalConfig::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw ValidationError("interval endpoints must be finite");
    }
    if (!(alpha < beta)) {
        throw ValidationError("interval requires alpha < beta");
    }
}

PhaseDecomposition decompose(double r, const IntervalConfig& interval) {
    interval.validate();
    if (!std::isfinite(r)) {
        throw ValidationError("decompose: r must be finite");
    }
    const double len = interval.length();
    auto winding = static_cast<std::int64_t>(std::floor((r - interval.alpha) / len));
    double frac = r - static_cast<double>(winding) * len;
    // floor roundoff can land frac just outside [alpha, beta)
    if (frac < interval.alpha) {
        frac += len;
        --winding;
    } else if (frac >= interval.beta) {
        frac -= len;
        ++winding;
    }
    // seam snap: treat values within 1e-12*len of beta as the next period
    if (interval.beta - frac <= 1e-12 * len) {
        frac = interval.alpha;
        ++winding;
    }
    return {frac, winding};
}

double frac_mod1(double r) {
    double f = r - std::floor(r);
    if (f >= 1.0) f = 0.0;  // r just below an integer
    return f;
}

std::complex<double> unit_phase(double r) {
    if (!std::isfinite(r)) {
        throw ValidationError("unit_phase: r must be finite");
    }
    const double f = frac_mod1(r);
    return {std::cos(two_pi * f), std::sin(two_pi * f)};
}

double circular_distance(double a, double b) {
    const double d = frac_mod1(a - b);
    return d <= 0.5 ? d : 1.0 - d;
}

}  // namespace momenta
