#include "ansec/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace ansec {

std::vector<double> SweepSpec::values() const {
    std::vector<double> out;
    out.reserve(std::size_t(count));
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    if (log_spacing) {
        const double ratio = std::pow(stop / start, 1.0 / double(count - 1));
        double v = start;
        for (int i = 0; i < count; ++i, v *= ratio) {
            out.push_back(i + 1 == count ? stop : v);
        }
    } else {
        const double step = (stop - start) / double(count - 1);
        for (int i = 0; i < count; ++i) {
            out.push_back(i + 1 == count ? stop : start + step * double(i));
        }
    }
    return out;
}

const std::vector<std::string>& sweep_variable_names() {
    static const std::vector<std::string> names = {
        "alpha", "r_b", "r_s", "epsilon", "delta",
        "p_a", "p_b", "sigma2_a", "sigma2_b", "sigma2_e", "gbar_ab", "gbar_ae",
    };
    return names;
}

void apply_sweep_value(Scenario& s, const std::string& variable, double value) {
    if (variable == "p_a") s.system.p_a = value;
    else if (variable == "p_b") s.system.p_b = value;
    else if (variable == "sigma2_a") s.system.sigma2_a = value;
    else if (variable == "sigma2_b") s.system.sigma2_b = value;
    else if (variable == "sigma2_e") s.system.sigma2_e = value;
    else if (variable == "gbar_ab") s.system.gbar_ab = value;
    else if (variable == "gbar_ae") s.system.gbar_ae = value;
    else if (variable == "alpha") {
        if (!s.design) s.design = TxDesign{};
        s.design->alpha = value;
    } else if (variable == "r_b") {
        if (!s.design) s.design = TxDesign{};
        s.design->r_b = value;
    } else if (variable == "r_s") {
        if (!s.design) s.design = TxDesign{};
        s.design->r_s = value;
    } else if (variable == "epsilon") {
        if (!s.constraints) s.constraints = OutageConstraints{};
        s.constraints->epsilon = value;
    } else if (variable == "delta") {
        if (!s.constraints) s.constraints = OutageConstraints{};
        s.constraints->delta = value;
    } else {
        throw invalid_parameter("unknown sweep variable: " + variable);
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line, const std::string& field) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw scenario_parse_error("not a number: '" + text + "'", line, field);
    }
    return v;
}

// Power value with a mandatory unit tag: "<number> dB" or "<number> W".
double parse_power(const std::string& text, int line, const std::string& field,
                   std::string& unit_out) {
    std::istringstream ss(text);
    std::string num, unit, extra;
    ss >> num >> unit;
    if (num.empty() || unit.empty()) {
        throw scenario_parse_error("power needs a value and one unit tag (dB or W)", line, field);
    }
    if (ss >> extra) {
        throw scenario_parse_error("power takes exactly one unit tag", line, field);
    }
    const double v = parse_number(num, line, field);
    if (unit == "dB" || unit == "db" || unit == "dBW") {
        unit_out = "dB";
        return std::pow(10.0, v / 10.0);
    }
    if (unit == "W" || unit == "linear") {
        unit_out = "W";
        return v;
    }
    throw scenario_parse_error("unknown power unit '" + unit + "' (use dB or W)", line, field);
}

std::uint64_t parse_u64(const std::string& text, int line, const std::string& field) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') {
        throw scenario_parse_error("not an unsigned integer: '" + text + "'", line, field);
    }
    return v;
}

} // namespace

Scenario parse_scenario(std::istream& in) {
    Scenario sc;
    std::string section;
    std::string line;
    int lineno = 0;
    bool have_design = false, have_constraints = false, have_sweep = false;
    TxDesign design;
    OutageConstraints constraints;
    SweepSpec sweep;

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw scenario_parse_error("unterminated section header", lineno, "");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "system" && section != "design" && section != "constraints"
                && section != "sim" && section != "sweep") {
                throw scenario_parse_error("unknown section [" + section + "]", lineno, "");
            }
            if (section == "design") have_design = true;
            if (section == "constraints") have_constraints = true;
            if (section == "sweep") have_sweep = true;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw scenario_parse_error("expected 'key = value'", lineno, "");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw scenario_parse_error("key outside any section", lineno, key);
        if (value.empty()) throw scenario_parse_error("missing value", lineno, key);

        if (section == "system") {
            std::string unit;
            if (key == "p_a") sc.system.p_a = parse_power(value, lineno, key, unit);
            else if (key == "p_b") sc.system.p_b = parse_power(value, lineno, key, unit);
            else if (key == "sigma2_a") sc.system.sigma2_a = parse_power(value, lineno, key, unit);
            else if (key == "sigma2_b") sc.system.sigma2_b = parse_power(value, lineno, key, unit);
            else if (key == "sigma2_e") sc.system.sigma2_e = parse_power(value, lineno, key, unit);
            else if (key == "gbar_ab") sc.system.gbar_ab = parse_number(value, lineno, key);
            else if (key == "gbar_ae") sc.system.gbar_ae = parse_number(value, lineno, key);
            else if (key == "gbar_be") sc.system.gbar_be = parse_number(value, lineno, key);
            else throw scenario_parse_error("unknown [system] key", lineno, key);
            if (!unit.empty()) sc.input_units.emplace_back(key, unit);
        } else if (section == "design") {
            if (key == "alpha") design.alpha = parse_number(value, lineno, key);
            else if (key == "r_b") design.r_b = parse_number(value, lineno, key);
            else if (key == "r_s") design.r_s = parse_number(value, lineno, key);
            else throw scenario_parse_error("unknown [design] key", lineno, key);
        } else if (section == "constraints") {
            if (key == "epsilon") constraints.epsilon = parse_number(value, lineno, key);
            else if (key == "delta") constraints.delta = parse_number(value, lineno, key);
            else throw scenario_parse_error("unknown [constraints] key", lineno, key);
        } else if (section == "sim") {
            if (key == "blocks") sc.sim.n_blocks = parse_u64(value, lineno, key);
            else if (key == "seed") sc.sim.rng.seed = parse_u64(value, lineno, key);
            else if (key == "streams") sc.sim.rng.stream_count = parse_u64(value, lineno, key);
            else if (key == "symbols_per_block") sc.sim.symbols_per_block = parse_u64(value, lineno, key);
            else if (key == "mode") {
                if (value == "fading") sc.sim.mode = SimMode::fading_level;
                else if (value == "symbol") sc.sim.mode = SimMode::symbol_level;
                else throw scenario_parse_error("mode must be 'fading' or 'symbol'", lineno, key);
            } else if (key == "normalization") {
                if (value == "expected-power") sc.normalization = AnNormalization::expected_power;
                else if (value == "per-symbol") sc.normalization = AnNormalization::per_symbol;
                else throw scenario_parse_error("normalization must be 'expected-power' or 'per-symbol'",
                                                lineno, key);
            } else {
                throw scenario_parse_error("unknown [sim] key", lineno, key);
            }
        } else if (section == "sweep") {
            if (key == "variable") {
                const auto& names = sweep_variable_names();
                if (std::find(names.begin(), names.end(), value) == names.end()) {
                    throw scenario_parse_error("unknown sweep variable '" + value + "'", lineno, key);
                }
                sweep.variable = value;
            } else if (key == "start") sweep.start = parse_number(value, lineno, key);
            else if (key == "stop") sweep.stop = parse_number(value, lineno, key);
            else if (key == "count") sweep.count = int(parse_u64(value, lineno, key));
            else if (key == "spacing") {
                if (value == "linear") sweep.log_spacing = false;
                else if (value == "log") sweep.log_spacing = true;
                else throw scenario_parse_error("spacing must be 'linear' or 'log'", lineno, key);
            } else {
                throw scenario_parse_error("unknown [sweep] key", lineno, key);
            }
        }
    }

    if (have_design) sc.design = design;
    if (have_constraints) sc.constraints = constraints;
    if (have_sweep) {
        if (sweep.variable.empty()) throw scenario_parse_error("[sweep] needs a variable", lineno, "variable");
        if (sweep.count < 1) throw scenario_parse_error("[sweep] count must be >= 1", lineno, "count");
        if (sweep.log_spacing && !(sweep.start > 0.0 && sweep.stop > 0.0)) {
            throw scenario_parse_error("log spacing needs positive start/stop", lineno, "spacing");
        }
        sc.sweep = sweep;
    }
    validate(sc.system);
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw scenario_parse_error("cannot open '" + path + "'", 0, "");
    return parse_scenario(in);
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "[system]\n";
    out << "p_a = " << fmt(s.system.p_a) << " W\n";
    out << "p_b = " << fmt(s.system.p_b) << " W\n";
    out << "sigma2_a = " << fmt(s.system.sigma2_a) << " W\n";
    out << "sigma2_b = " << fmt(s.system.sigma2_b) << " W\n";
    out << "sigma2_e = " << fmt(s.system.sigma2_e) << " W\n";
    out << "gbar_ab = " << fmt(s.system.gbar_ab) << "\n";
    out << "gbar_ae = " << fmt(s.system.gbar_ae) << "\n";
    out << "gbar_be = " << fmt(s.system.gbar_be) << "\n";
    if (s.design) {
        out << "[design]\n";
        out << "alpha = " << fmt(s.design->alpha) << "\n";
        out << "r_b = " << fmt(s.design->r_b) << "\n";
        out << "r_s = " << fmt(s.design->r_s) << "\n";
    }
    if (s.constraints) {
        out << "[constraints]\n";
        out << "epsilon = " << fmt(s.constraints->epsilon) << "\n";
        out << "delta = " << fmt(s.constraints->delta) << "\n";
    }
    out << "[sim]\n";
    out << "blocks = " << s.sim.n_blocks << "\n";
    out << "seed = " << s.sim.rng.seed << "\n";
    out << "streams = " << s.sim.rng.stream_count << "\n";
    out << "mode = " << (s.sim.mode == SimMode::fading_level ? "fading" : "symbol") << "\n";
    out << "symbols_per_block = " << s.sim.symbols_per_block << "\n";
    out << "normalization = "
        << (s.normalization == AnNormalization::expected_power ? "expected-power" : "per-symbol")
        << "\n";
    if (s.sweep) {
        out << "[sweep]\n";
        out << "variable = " << s.sweep->variable << "\n";
        out << "start = " << fmt(s.sweep->start) << "\n";
        out << "stop = " << fmt(s.sweep->stop) << "\n";
        out << "count = " << s.sweep->count << "\n";
        out << "spacing = " << (s.sweep->log_spacing ? "log" : "linear") << "\n";
    }
    return out.str();
}

} // namespace ansec
