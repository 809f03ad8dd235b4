#ifndef ANSEC_SCENARIO_HPP
#define ANSEC_SCENARIO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ansec/params.hpp"
#include "ansec/simulate.hpp"

// Scenario files: INI-style key/value text with sections [system], [design],
// [constraints], [sim], [sweep]. Power-like quantities (p_a, p_b, sigma2_*)
// carry exactly one unit tag, "dB" or "W" ("linear" is accepted for "W");
// everything else is a bare number. The canonical serialized form is linear.

namespace ansec {

struct SweepSpec {
    std::string variable;  // one of the names in sweep_variable_names()
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
    bool log_spacing = false;

    std::vector<double> values() const;
};

struct Scenario {
    SystemParams system;
    std::optional<TxDesign> design;
    std::optional<OutageConstraints> constraints;
    SimConfig sim;
    AnNormalization normalization = AnNormalization::expected_power;
    std::optional<SweepSpec> sweep;

    // original unit tags, for echoing dB inputs in output metadata
    std::vector<std::pair<std::string, std::string>> input_units;
};

const std::vector<std::string>& sweep_variable_names();

/// Applies one sweep value to the matching field (params, design, or
/// constraints must be present for design/constraint variables).
void apply_sweep_value(Scenario& s, const std::string& variable, double value);

Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_file(const std::string& path);
std::string serialize_scenario(const Scenario& s);

} // namespace ansec

#endif
