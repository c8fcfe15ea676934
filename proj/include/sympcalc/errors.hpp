#ifndef SYMPCALC_ERRORS_HPP
#define SYMPCALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sympcalc {

struct NotClosed : std::runtime_error {
    explicit NotClosed(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResidualTooLarge : std::runtime_error {
    explicit ResidualTooLarge(const std::string& msg) : std::runtime_error(msg) {}
};

struct StepTooCoarse : std::runtime_error {
    explicit StepTooCoarse(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResolutionTooCoarse : std::runtime_error {
    explicit ResolutionTooCoarse(const std::string& msg) : std::runtime_error(msg) {}
};

struct LengthBudgetExceeded : std::runtime_error {
    explicit LengthBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroForm : std::runtime_error {
    explicit ZeroForm(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateCurve : std::runtime_error {
    explicit DegenerateCurve(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace sympcalc

#endif
