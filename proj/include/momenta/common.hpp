#ifndef MOMENTA_COMMON_HPP
#define MOMENTA_COMMON_HPP

#include <stdexcept>
#include <string>

namespace momenta {

/// Invalid input: bad parameters, malformed files, contract violations.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure: non-convergence, ill conditioning.
/// The CLI maps this to exit code 1.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double two_pi = 6.283185307179586476925286766559;

}  // namespace momenta

#endif
