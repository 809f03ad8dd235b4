// Command-line front end: scenario-driven analytic tables, Monte Carlo runs,
// constrained design optimization, and canned figure experiments, all written
// as CSV plus a plain-text metadata sidecar.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ansec/analytic.hpp"
#include "ansec/optimize.hpp"
#include "ansec/scenario.hpp"
#include "ansec/simulate.hpp"
#include "ansec/table.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInfeasible = 4;

struct CommonOpts {
    std::string scenario_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> blocks;
    bool deterministic = false;
    double grid_step = 0.0;  // 0 = library default
};

std::string meta_path_for(const std::string& out_path) { return out_path + ".meta"; }

std::vector<std::string> parameter_lines(const ansec::Scenario& sc) {
    using ansec::ResultTable;
    const auto& p = sc.system;
    auto unit_of = [&](const std::string& key) -> std::string {
        for (const auto& [k, u] : sc.input_units) {
            if (k == key && u == "dB") return " (input in dB)";
        }
        return "";
    };
    std::vector<std::string> lines;
    lines.push_back("p_a = " + ResultTable::format(p.p_a) + " W" + unit_of("p_a"));
    lines.push_back("p_b = " + ResultTable::format(p.p_b) + " W" + unit_of("p_b"));
    lines.push_back("sigma2_a = " + ResultTable::format(p.sigma2_a) + " W" + unit_of("sigma2_a"));
    lines.push_back("sigma2_b = " + ResultTable::format(p.sigma2_b) + " W" + unit_of("sigma2_b"));
    lines.push_back("sigma2_e = " + ResultTable::format(p.sigma2_e) + " W" + unit_of("sigma2_e"));
    lines.push_back("gbar_ab = " + ResultTable::format(p.gbar_ab));
    lines.push_back("gbar_ae = " + ResultTable::format(p.gbar_ae));
    lines.push_back("gbar_be = " + ResultTable::format(p.gbar_be));
    if (sc.design) {
        lines.push_back("alpha = " + ResultTable::format(sc.design->alpha));
        lines.push_back("r_b = " + ResultTable::format(sc.design->r_b));
        lines.push_back("r_s = " + ResultTable::format(sc.design->r_s));
    }
    if (sc.constraints) {
        lines.push_back("epsilon = " + ResultTable::format(sc.constraints->epsilon));
        lines.push_back("delta = " + ResultTable::format(sc.constraints->delta));
    }
    return lines;
}

// Sweep points: the swept values, or a single placeholder when no sweep.
struct SweepPoints {
    std::string variable;  // "point" when no sweep
    std::vector<double> values;
};

SweepPoints sweep_points(const ansec::Scenario& sc) {
    if (sc.sweep) return {sc.sweep->variable, sc.sweep->values()};
    return {"point", {0.0}};
}

ansec::Scenario at_point(const ansec::Scenario& base, const SweepPoints& pts, double value) {
    ansec::Scenario sc = base;
    if (sc.sweep) ansec::apply_sweep_value(sc, pts.variable, value);
    return sc;
}

void apply_overrides(ansec::Scenario& sc, const CommonOpts& opts) {
    if (opts.seed) sc.sim.rng.seed = *opts.seed;
    if (opts.blocks) sc.sim.n_blocks = *opts.blocks;
}

ansec::GridSpec grid_spec_for(const CommonOpts& opts) {
    ansec::GridSpec grid;
    if (opts.grid_step > 0.0) {
        grid.polish_step = opts.grid_step;
        grid.fine_step = std::max(opts.grid_step, grid.fine_step);
        grid.coarse_step = std::max(grid.coarse_step, opts.grid_step);
    }
    return grid;
}

int cmd_analytic(const CommonOpts& opts) {
    ansec::Scenario sc = ansec::parse_scenario_file(opts.scenario_path);
    apply_overrides(sc, opts);
    if (!sc.design) throw ansec::invalid_parameter("analytic needs a [design] section");
    const SweepPoints pts = sweep_points(sc);
    ansec::ResultTable table({pts.variable, "p_so", "p_co", "eta", "method"});
    for (double v : pts.values) {
        const ansec::Scenario point = at_point(sc, pts, v);
        const ansec::PerformanceReport rep = ansec::analyze(point.system, *point.design);
        table.begin_row();
        table.push(v);
        table.push(rep.p_so);
        table.push(rep.p_co);
        table.push(rep.eta);
        table.push(ansec::method_name(rep.method));
    }
    table.write_csv(opts.out_path);
    ansec::Metadata meta;
    meta.deterministic = opts.deterministic;
    meta.add("command", "analytic");
    meta.add("scenario", opts.scenario_path);
    meta.add("x_axis", pts.variable);
    meta.add("y_axis", "probability / throughput");
    meta.parameter_lines = parameter_lines(sc);
    meta.write(meta_path_for(opts.out_path));
    return kExitOk;
}

int cmd_simulate(const CommonOpts& opts) {
    ansec::Scenario sc = ansec::parse_scenario_file(opts.scenario_path);
    apply_overrides(sc, opts);
    if (!sc.design) throw ansec::invalid_parameter("simulate needs a [design] section");
    const SweepPoints pts = sweep_points(sc);
    bool degenerate_se = false;
    std::unique_ptr<ansec::ResultTable> table;
    if (sc.sim.mode == ansec::SimMode::fading_level) {
        table = std::make_unique<ansec::ResultTable>(std::vector<std::string>{
            pts.variable, "p_so_hat", "p_so_se", "p_co_hat", "p_co_se", "eta_hat",
            "n_blocks", "method"});
        for (double v : pts.values) {
            const ansec::Scenario point = at_point(sc, pts, v);
            const ansec::EmpiricalReport rep =
                ansec::simulate_outage(point.system, *point.design, point.sim);
            degenerate_se = degenerate_se || rep.se_degenerate;
            table->begin_row();
            table->push(v);
            table->push(rep.p_so_hat);
            table->push(rep.p_so_se);
            table->push(rep.p_co_hat);
            table->push(rep.p_co_se);
            table->push(rep.eta_hat);
            table->push(double(rep.n_blocks));
            table->push("monte-carlo");
        }
    } else {
        table = std::make_unique<ansec::ResultTable>(std::vector<std::string>{
            pts.variable, "snr_bob_measured", "snr_bob_predicted", "snr_ratio",
            "residual_power_measured", "residual_power_predicted", "an_residual_correlation",
            "sinr_eve_measured", "sinr_eve_predicted", "resampled_symbols", "n_blocks", "method"});
        for (double v : pts.values) {
            const ansec::Scenario point = at_point(sc, pts, v);
            const ansec::SymbolLevelReport rep = ansec::simulate_symbol_level(
                point.system, *point.design, point.sim, point.normalization);
            table->begin_row();
            table->push(v);
            table->push(rep.mean_measured_snr_bob);
            table->push(rep.mean_predicted_snr_bob);
            table->push(rep.snr_ratio_mean);
            table->push(rep.mean_measured_residual_power);
            table->push(rep.mean_predicted_residual_power);
            table->push(rep.an_residual_correlation);
            table->push(rep.mean_measured_sinr_eve);
            table->push(rep.mean_predicted_sinr_eve);
            table->push(double(rep.resampled_symbols));
            table->push(double(rep.n_blocks));
            table->push("monte-carlo");
        }
    }
    table->write_csv(opts.out_path);
    ansec::Metadata meta;
    meta.deterministic = opts.deterministic;
    meta.add("command", "simulate");
    meta.add("scenario", opts.scenario_path);
    meta.add("seed", std::to_string(sc.sim.rng.seed));
    meta.add("blocks", std::to_string(sc.sim.n_blocks));
    meta.add("mode", sc.sim.mode == ansec::SimMode::fading_level ? "fading" : "symbol");
    if (degenerate_se) meta.add("note", "standard errors degenerate on at least one row");
    meta.parameter_lines = parameter_lines(sc);
    meta.write(meta_path_for(opts.out_path));
    return kExitOk;
}

int cmd_optimize(const CommonOpts& opts) {
    ansec::Scenario sc = ansec::parse_scenario_file(opts.scenario_path);
    apply_overrides(sc, opts);
    if (!sc.constraints) throw ansec::invalid_parameter("optimize needs a [constraints] section");
    const ansec::GridSpec grid = grid_spec_for(opts);
    const SweepPoints pts = sweep_points(sc);
    ansec::ResultTable table({pts.variable, "alpha_star", "r_b_star", "r_s_star", "eta_star",
                              "p_so", "p_co", "feasible", "secrecy_binding", "connection_binding",
                              "phi1", "phi2", "psi", "method",
                              "eta_benchmark", "bm_threshold", "bm_r_b", "bm_r_s", "bm_feasible"});
    std::size_t feasible_rows = 0;
    for (double v : pts.values) {
        const ansec::Scenario point = at_point(sc, pts, v);
        const auto& P = point.system;
        const auto& C = *point.constraints;

        ansec::DesignSolution sol;
        std::string method = "analytic-asymptotic";
        if (P.sigma2_a == 0.0 && C.epsilon < 1.0) {
            try {
                sol = ansec::joint_design(P, C);
            } catch (const ansec::invalid_parameter&) {
                sol = ansec::grid_oracle(P, C, grid);  // outside the closed-form regime
                method = "analytic-asymptotic-grid";
            }
        } else {
            sol = ansec::grid_oracle(P, C, grid);
            method = P.sigma2_a == 0.0 ? "analytic-asymptotic-grid" : "analytic-general-grid";
        }
        if (sol.feasible) ++feasible_rows;

        const ansec::OnOffSolution bench = ansec::onoff_optimize(P, C, grid);

        double p_so = 0.0, p_co = 0.0;
        if (sol.feasible) {
            const ansec::PerformanceReport rep =
                P.sigma2_a == 0.0 ? ansec::analyze_asymptotic(P, sol.design)
                                  : ansec::analyze(P, sol.design);
            p_so = rep.p_so;
            p_co = rep.p_co;
        }
        const double nan = std::nan("");
        table.begin_row();
        table.push(v);
        table.push(sol.feasible ? sol.design.alpha : 0.0);
        table.push(sol.feasible ? sol.design.r_b : 0.0);
        table.push(sol.feasible ? sol.design.r_s : 0.0);
        table.push(sol.feasible ? sol.eta : 0.0);
        table.push(p_so);
        table.push(p_co);
        table.push_flag(sol.feasible);
        table.push_flag(sol.secrecy_binding);
        table.push_flag(sol.connection_binding);
        table.push(sol.aux ? sol.aux->phi1 : nan);
        table.push(sol.aux ? sol.aux->phi2 : nan);
        table.push(sol.aux ? sol.aux->psi : nan);
        table.push(method);
        table.push(bench.feasible ? bench.eta : 0.0);
        table.push(bench.feasible ? bench.design.threshold : 0.0);
        table.push(bench.feasible ? bench.design.r_b : 0.0);
        table.push(bench.feasible ? bench.design.r_s : 0.0);
        table.push_flag(bench.feasible);
    }
    table.write_csv(opts.out_path);
    ansec::Metadata meta;
    meta.deterministic = opts.deterministic;
    meta.add("command", "optimize");
    meta.add("scenario", opts.scenario_path);
    meta.add("x_axis", pts.variable);
    meta.add("grid_r_b_max", ansec::ResultTable::format(grid.r_b_max));
    meta.add("grid_resolution", ansec::ResultTable::format(grid.polish_step));
    meta.parameter_lines = parameter_lines(sc);
    meta.write(meta_path_for(opts.out_path));
    return feasible_rows == 0 ? kExitInfeasible : kExitOk;
}

// Canned experiments. The two-phase outage tradeoff sweeps the power split at
// fixed rates; the throughput-versus-secrecy-cap pair compares the optimized
// two-phase design against the optimized on-off benchmark.

ansec::SystemParams figure_params(double sigma2_a, double sigma2_e) {
    ansec::SystemParams p;
    p.p_a = 10.0;  // 10 dB
    p.p_b = 10.0;
    p.sigma2_a = sigma2_a;
    p.sigma2_b = 0.1;
    p.sigma2_e = sigma2_e;
    p.gbar_ab = 1.0;
    p.gbar_ae = 1.0;
    return p;
}

std::vector<double> epsilon_axis() {
    std::vector<double> eps;
    eps.push_back(0.0);  // exact perfect-secrecy endpoint
    const int n = 50;
    const double lo = 1e-4, hi = 1.0;
    for (int i = 0; i < n; ++i) {
        eps.push_back(i + 1 == n ? hi : lo * std::pow(hi / lo, double(i) / double(n - 1)));
    }
    return eps;
}

int cmd_figure(const std::string& name, const std::string& out_dir, const CommonOpts& opts) {
    const std::string base = out_dir + "/" + name;
    ansec::Metadata meta;
    meta.deterministic = opts.deterministic;
    meta.add("command", "figure " + name);

    if (name == "figure2") {
        const ansec::SystemParams p = figure_params(0.1, 0.1);
        ansec::ResultTable table({"alpha", "p_co", "p_so"});
        const int n = 101;
        for (int i = 0; i < n; ++i) {
            const double alpha = 0.001 + (1.0 - 0.001) * double(i) / double(n - 1);
            const ansec::TxDesign d{alpha, 2.0, 1.0};
            table.begin_row();
            table.push(alpha);
            table.push(ansec::connection_outage(p, d));
            table.push(ansec::secrecy_outage(p, d));
        }
        table.write_csv(base + ".csv");
        meta.add("x_axis", "alpha");
        meta.add("y_axis", "outage probability");
        meta.parameter_lines = {"r_b = 2", "r_s = 1", "p_a = 10 W", "p_b = 10 W",
                                "sigma2_a = 0.1 W", "sigma2_b = 0.1 W", "sigma2_e = 0.1 W",
                                "gbar_ab = 1", "gbar_ae = 1"};
        meta.write(base + ".csv.meta");
        return kExitOk;
    }

    if (name == "figure3a" || name == "figure3b") {
        const bool benchmark = name == "figure3b";
        const ansec::GridSpec grid = grid_spec_for(opts);
        const std::vector<double> sigma2_es = {0.0, 0.1, 0.2};
        ansec::ResultTable table({"epsilon", "eta_sigma2e_0", "eta_sigma2e_0.1", "eta_sigma2e_0.2"});
        for (double eps : epsilon_axis()) {
            table.begin_row();
            table.push(eps);
            for (double s2e : sigma2_es) {
                const ansec::SystemParams p = figure_params(0.0, s2e);
                const ansec::OutageConstraints c{eps, 0.1};
                double eta = 0.0;
                if (benchmark) {
                    const ansec::OnOffSolution sol = ansec::onoff_optimize(p, c, grid);
                    eta = sol.feasible ? sol.eta : 0.0;
                } else if (eps < 1.0) {
                    try {
                        const ansec::DesignSolution sol = ansec::joint_design(p, c);
                        eta = sol.feasible ? sol.eta : 0.0;
                    } catch (const ansec::invalid_parameter&) {
                        const ansec::DesignSolution sol = ansec::grid_oracle(p, c, grid);
                        eta = sol.feasible ? sol.eta : 0.0;
                    }
                } else {
                    const ansec::DesignSolution sol = ansec::grid_oracle(p, c, grid);
                    eta = sol.feasible ? sol.eta : 0.0;
                }
                table.push(eta);
            }
        }
        table.write_csv(base + ".csv");
        meta.add("x_axis", "epsilon");
        meta.add("y_axis", benchmark ? "benchmark throughput (bits/channel use)"
                                     : "throughput (bits/channel use)");
        meta.add("series", "sigma2_e = 0, 0.1, 0.2");
        meta.parameter_lines = {"p_a = 10 W", "p_b = 10 W", "sigma2_a = 0 W", "sigma2_b = 0.1 W",
                                "gbar_ab = 1", "gbar_ae = 1", "delta = 0.1"};
        meta.write(base + ".csv.meta");
        return kExitOk;
    }

    std::cerr << "unknown figure name '" << name << "' (use figure2, figure3a, figure3b)\n";
    return kExitParse;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-phase artificial-noise injection toolkit for single-antenna wiretap links"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string figure_name, figure_dir;

    auto parse_u64_into = [](std::optional<std::uint64_t>& slot) {
        return [&slot](const CLI::results_t& res) {
            char* end = nullptr;
            errno = 0;
            const unsigned long long v = std::strtoull(res[0].c_str(), &end, 10);
            if (end == res[0].c_str() || *end != '\0' || errno == ERANGE) return false;
            slot = v;
            return true;
        };
    };
    auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
        if (needs_scenario) {
            cmd->add_option("--scenario", opts.scenario_path, "scenario file")->required();
            cmd->add_option("--out", opts.out_path, "output CSV path")->required();
        }
        cmd->add_option("--seed", parse_u64_into(opts.seed), "override the scenario RNG seed");
        cmd->add_option("--blocks", parse_u64_into(opts.blocks), "override the scenario block count");
        cmd->add_flag("--deterministic", opts.deterministic, "omit timestamps from metadata");
        cmd->add_option("--grid-step", opts.grid_step, "final optimizer grid resolution");
    };

    CLI::App* analytic = app.add_subcommand("analytic", "closed-form outage/throughput table");
    add_common(analytic, true);
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimates");
    add_common(simulate, true);
    CLI::App* optimize = app.add_subcommand("optimize", "constrained design optimization");
    add_common(optimize, true);
    CLI::App* figure = app.add_subcommand("figure", "reproduce a canned experiment");
    figure->add_option("name", figure_name, "figure2 | figure3a | figure3b")->required();
    figure->add_option("--out", figure_dir, "output directory")->required();
    add_common(figure, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // command-line usage problems share the parse-error exit code
        return app.exit(e) == 0 ? kExitOk : kExitParse;
    }

    try {
        if (app.got_subcommand(analytic)) return cmd_analytic(opts);
        if (app.got_subcommand(simulate)) return cmd_simulate(opts);
        if (app.got_subcommand(optimize)) return cmd_optimize(opts);
        if (app.got_subcommand(figure)) return cmd_figure(figure_name, figure_dir, opts);
    } catch (const ansec::scenario_parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ansec::numerical_failure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ansec::invalid_parameter& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
