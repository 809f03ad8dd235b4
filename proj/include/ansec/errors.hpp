#ifndef ANSEC_ERRORS_HPP
#define ANSEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ansec {

// Rejected input (domain violation, malformed value).
class invalid_parameter : public std::invalid_argument {
public:
    explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

// An iterative routine failed to reach its tolerance. Carries what was achieved.
class numerical_failure : public std::runtime_error {
public:
    numerical_failure(const std::string& what, double achieved_tolerance)
        : std::runtime_error(what + " (achieved tolerance " + std::to_string(achieved_tolerance) + ")"),
          achieved_tolerance_(achieved_tolerance) {}

    double achieved_tolerance() const { return achieved_tolerance_; }

private:
    double achieved_tolerance_;
};

// Scenario file rejected; keeps the line/field for CLI diagnostics.
class scenario_parse_error : public std::runtime_error {
public:
    scenario_parse_error(const std::string& what, int line, const std::string& field)
        : std::runtime_error("scenario:" + std::to_string(line) + ": " + what
                             + (field.empty() ? "" : " [field: " + field + "]")),
          line_(line), field_(field) {}

    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

} // namespace ansec

#endif
