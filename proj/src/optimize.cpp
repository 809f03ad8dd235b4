#include "ansec/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ansec/analytic.hpp"

namespace ansec {

namespace {

constexpr double kConstraintSlack = 1e-12;  // feasibility comparisons
constexpr double kBindingSlack = 1e-6;      // reported "binding" flags

bool meets(double value, double cap) { return value <= cap + kConstraintSlack; }

} // namespace

double secrecy_slack_factor(const SystemParams& p, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw invalid_parameter("epsilon must be in [0, 1]");
    if (epsilon == 1.0) return std::numeric_limits<double>::infinity();  // no secrecy constraint
    if (epsilon == 0.0 || p.sigma2_e == 0.0) return 1.0;  // perfect secrecy / noiseless Eve
    return 1.0 - p.sigma2_e / (p.p_a * p.gbar_ae * std::log(epsilon));
}

double optimal_alpha(const SystemParams& p, double r_b, double r_s, double epsilon) {
    validate(p);
    if (!(r_s > 0.0) || !(r_b >= r_s)) throw invalid_parameter("need r_b >= r_s > 0");
    const double factor = secrecy_slack_factor(p, epsilon);
    if (std::isinf(factor)) return 1.0;  // no secrecy constraint
    return std::min(perfect_secrecy_boundary(r_b, r_s) * factor, 1.0);
}

FeasibleRegion feasibility(const SystemParams& p, double epsilon) {
    validate(p);
    // sigma2_a is treated as 0 here (asymptotic regime).
    const double factor = secrecy_slack_factor(p, epsilon);
    if (std::isinf(factor)) return {0.0};  // any delta > 0 admits a design
    return {-std::expm1(-p.sigma2_b / (p.p_a * p.gbar_ab * factor))};
}

bool is_feasible(const SystemParams& p, const OutageConstraints& c) {
    validate(c);
    return c.delta > feasibility(p, c.epsilon).delta_l;
}

double psi_equation_lhs(double x) {
    if (!(x > 0.0)) throw invalid_parameter("psi equation is defined for x > 0");
    const double t = std::exp2(x);
    const double tm1 = std::expm1(x * std::numbers::ln2_v<double>);  // t - 1, no cancellation
    const double u = std::sqrt(t * tm1);
    return u / (x * t * (2.0 * t + 2.0 * u - 1.0));
}

double psi_equation_rhs(const SystemParams& p, double epsilon) {
    validate(p);
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw invalid_parameter("epsilon must be in [0, 1)");
    // Written with sigma2_e / ln(eps) so the epsilon -> 0 limit is exact.
    const double ratio = epsilon == 0.0 ? 0.0 : p.sigma2_e / std::log(epsilon);
    return p.sigma2_b * p.gbar_ae * std::numbers::ln2_v<double>
         / (p.gbar_ab * (p.p_a * p.gbar_ae - ratio));
}

double solve_psi_equation(double rhs) {
    if (!(rhs > 0.0)) throw invalid_parameter("psi equation right side must be > 0");
    // lhs decreases from +inf at 0+ to 0 at +inf; expand [lo, hi] until it
    // straddles rhs.
    double lo = 1e-6;
    double hi = 1.0;
    for (int i = 0; i < 64 && psi_equation_lhs(lo) < rhs; ++i) lo *= 0.25;
    int expand = 0;
    while (psi_equation_lhs(hi) > rhs) {
        hi *= 2.0;
        if (++expand > 9 || hi > 512.0) {
            throw numerical_failure("psi bracket expansion failed (rhs=" + std::to_string(rhs) + ")",
                                    std::fabs(psi_equation_lhs(hi) - rhs));
        }
    }
    if (psi_equation_lhs(lo) < rhs) {
        throw numerical_failure("psi bracket lower end failed (rhs=" + std::to_string(rhs) + ")",
                                std::fabs(psi_equation_lhs(lo) - rhs));
    }
    // The root is meaningful only if lhs is monotone over the bracket; detect
    // multiple crossings loudly rather than silently returning one of them.
    {
        int crossings = 0;
        double prev = psi_equation_lhs(lo) - rhs;
        const int kScan = 128;
        for (int i = 1; i <= kScan; ++i) {
            const double x = lo * std::pow(hi / lo, double(i) / kScan);
            const double cur = psi_equation_lhs(x) - rhs;
            if ((prev > 0.0) != (cur > 0.0)) ++crossings;
            prev = cur;
        }
        if (crossings > 1) {
            throw numerical_failure("psi equation has multiple sign changes on the bracket",
                                    double(crossings));
        }
    }
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // ran out of doubles
        if (psi_equation_lhs(mid) > rhs) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double solve_psi(const SystemParams& p, double epsilon) {
    return solve_psi_equation(psi_equation_rhs(p, epsilon));
}

namespace {

DesignSolution infeasible_solution() {
    DesignSolution s;
    s.design = {0.0, 0.0, 0.0};
    s.eta = 0.0;
    s.feasible = false;
    return s;
}

} // namespace

DesignSolution joint_design(const SystemParams& p, const OutageConstraints& c) {
    validate(p);
    validate(c);
    if (p.sigma2_a != 0.0) {
        throw invalid_parameter("joint_design requires sigma2_a = 0; use grid_oracle otherwise");
    }
    if (c.epsilon >= 1.0) {
        throw invalid_parameter("joint_design requires epsilon < 1; use grid_oracle otherwise");
    }
    if (!is_feasible(p, c)) return infeasible_solution();

    const double factor = secrecy_slack_factor(p, c.epsilon);
    const double outage_rate = p.sigma2_b / (factor * p.p_a * p.gbar_ab);  // K in eta = R_s/2 exp(-K h)
    const double delta_budget = -std::log1p(-c.delta);                     // L = -ln(1-delta)
    // phi1 = 2^{r_b}, phi2 = 2^{r_s} at the point where the delta cap binds
    // along the per-r_s optimal r_b curve.
    const double phi1 = (delta_budget + outage_rate) / (2.0 * outage_rate);
    const double phi2 = std::isinf(delta_budget)
        ? std::numeric_limits<double>::infinity()
        : (delta_budget + outage_rate) * (delta_budget + outage_rate)
              / (4.0 * delta_budget * outage_rate);
    const double psi = solve_psi(p, c.epsilon);

    DesignAux aux{phi1, phi2, psi, false};
    double r_b, r_s;
    if (std::exp2(psi) <= phi2) {
        // interior optimum: the delta cap is slack
        aux.interior_branch = true;
        r_s = psi;
        const double t = std::exp2(psi);
        r_b = std::log2(t + std::sqrt(t * (t - 1.0)));
    } else {
        // delta cap binds; the matching pair stays on the optimal-r_b curve
        r_s = std::log2(phi2);
        r_b = std::log2(phi1);
    }
    const double alpha = perfect_secrecy_boundary(r_b, r_s) * factor;
    if (alpha > 1.0 + kConstraintSlack) {
        throw invalid_parameter(
            "joint design outside the closed-form regime (alpha* > 1); use grid_oracle");
    }

    DesignSolution s;
    s.design = {std::min(alpha, 1.0), r_b, r_s};
    const PerformanceReport rep = analyze_asymptotic(p, s.design);
    s.eta = rep.eta;
    s.feasible = meets(rep.p_so, c.epsilon) && rep.p_co <= c.delta + 1e-9;
    s.secrecy_binding = std::fabs(rep.p_so - c.epsilon) <= kBindingSlack;
    s.connection_binding = std::fabs(rep.p_co - c.delta) <= kBindingSlack;
    s.aux = aux;
    return s;
}

// ---------------------------------------------------------------------------
// Grid oracles

namespace {

struct GridBest {
    double eta = -1.0;
    double r_b = 0.0, r_s = 0.0, alpha = 0.0;
    bool valid = false;
};

// Best feasible point of one r_b column, scanning r_s = step, 2*step, ... <= r_b.
GridBest scan_column(const SystemParams& p, const OutageConstraints& c,
                     double r_b, double step, double r_s_lo, double r_s_hi) {
    GridBest best;
    const long j0 = std::max(1L, std::lround(std::ceil(r_s_lo / step - 1e-9)));
    for (long j = j0;; ++j) {
        const double r_s = double(j) * step;
        if (r_s > r_s_hi + 1e-12 || r_s > r_b + 1e-12) break;
        const double alpha = optimal_alpha(p, r_b, std::min(r_s, r_b), c.epsilon);
        if (!(alpha > 0.0)) continue;
        const TxDesign d{alpha, r_b, std::min(r_s, r_b)};
        if (!meets(secrecy_outage(p, d), c.epsilon)) continue;
        const double p_co = connection_outage(p, d);
        if (!meets(p_co, c.delta)) continue;
        const double eta = throughput_from_pco(p_co, d.r_s);
        if (eta > best.eta) {
            best = {eta, d.r_b, d.r_s, d.alpha, true};
        }
    }
    return best;
}

struct Window {
    double b_lo, b_hi, s_lo, s_hi;
};

template <bool Parallel>
GridBest sweep_window(const SystemParams& p, const OutageConstraints& c,
                      const Window& w, double step) {
    const long i0 = std::max(1L, std::lround(std::ceil(w.b_lo / step - 1e-9)));
    const long i1 = std::lround(std::floor(w.b_hi / step + 1e-9));
    if (i1 < i0) return {};
    std::vector<GridBest> rows(std::size_t(i1 - i0 + 1));
    if constexpr (Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
        for (long i = i0; i <= i1; ++i) {
            rows[std::size_t(i - i0)] = scan_column(p, c, double(i) * step, step, w.s_lo, w.s_hi);
        }
    } else {
        for (long i = i0; i <= i1; ++i) {
            rows[std::size_t(i - i0)] = scan_column(p, c, double(i) * step, step, w.s_lo, w.s_hi);
        }
    }
    GridBest best;  // fixed reduction order: independent of worker count
    for (const GridBest& r : rows) {
        if (r.valid && r.eta > best.eta) best = r;
    }
    return best;
}

// Log-spaced rate pairs near the origin. Feasible designs just above the
// delta feasibility boundary have r_s shrinking like the square of the slack,
// far below any uniform step, so the uniform grid is supplemented with these
// probes (they only win when nothing on the uniform grid is feasible).
GridBest origin_probes(const SystemParams& p, const OutageConstraints& c, double upper,
                       double r_b_max) {
    GridBest best;
    constexpr int per_decade = 10;
    constexpr double floor = 1e-9;
    const int n = int(std::ceil(std::log10(upper / floor) * per_decade));
    auto value = [&](int i) { return floor * std::pow(10.0, double(i) / per_decade); };
    for (int i = 0; i <= n; ++i) {
        const double r_s = std::min(value(i), upper);
        for (int j = i; j <= n + 2 * per_decade; ++j) {
            const double r_b = std::max(value(j), r_s);
            if (r_b > r_b_max) break;
            const double alpha = optimal_alpha(p, r_b, r_s, c.epsilon);
            if (!(alpha > 0.0)) continue;
            const TxDesign d{alpha, r_b, r_s};
            if (!meets(secrecy_outage(p, d), c.epsilon)) continue;
            const double p_co = connection_outage(p, d);
            if (!meets(p_co, c.delta)) continue;
            const double eta = throughput_from_pco(p_co, r_s);
            if (eta > best.eta) best = {eta, r_b, r_s, alpha, true};
        }
    }
    return best;
}

template <bool Parallel>
DesignSolution grid_oracle_impl(const SystemParams& p, const OutageConstraints& c,
                                const GridSpec& grid) {
    validate(p);
    validate(c);
    if (!(grid.r_b_max > 0.0) || !(grid.coarse_step > 0.0)
        || !(grid.fine_step > 0.0) || !(grid.polish_step > 0.0)) {
        throw invalid_parameter("grid steps and r_b_max must be > 0");
    }
    Window w{0.0, grid.r_b_max, 0.0, grid.r_b_max};
    GridBest best = sweep_window<Parallel>(p, c, w, grid.coarse_step);
    {
        const GridBest probe = origin_probes(p, c, std::min(grid.coarse_step, grid.r_b_max),
                                             grid.r_b_max);
        if (probe.valid && probe.eta > best.eta) best = probe;
    }
    const double steps[2] = {grid.fine_step, grid.polish_step};
    double prev = grid.coarse_step;
    for (double step : steps) {
        if (!best.valid || step >= prev) break;
        const double pad = 2.0 * prev;
        Window win{std::max(best.r_b - pad, 0.0), std::min(best.r_b + pad, grid.r_b_max),
                   std::max(best.r_s - pad, 0.0), best.r_s + pad};
        const GridBest refined = sweep_window<Parallel>(p, c, win, step);
        if (refined.valid && refined.eta > best.eta) best = refined;
        prev = step;
    }
    if (!best.valid) return infeasible_solution();

    DesignSolution s;
    s.design = {best.alpha, best.r_b, best.r_s};
    const PerformanceReport rep = analyze(p, s.design);
    s.eta = rep.eta;
    s.feasible = true;
    s.secrecy_binding = std::fabs(rep.p_so - c.epsilon) <= kBindingSlack;
    s.connection_binding = std::fabs(rep.p_co - c.delta) <= kBindingSlack;
    return s;
}

} // namespace

DesignSolution grid_oracle(const SystemParams& p, const OutageConstraints& c, const GridSpec& grid) {
    return grid_oracle_impl<true>(p, c, grid);
}

DesignSolution grid_oracle_serial(const SystemParams& p, const OutageConstraints& c,
                                  const GridSpec& grid) {
    return grid_oracle_impl<false>(p, c, grid);
}

OnOffSolution onoff_optimize(const SystemParams& p, const OutageConstraints& c,
                             const GridSpec& grid) {
    validate(p);
    validate(c);
    OnOffSolution best;
    best.design = {0.0, 0.0, 0.0};
    // No finite rate pair meets these caps: the eavesdropper outage is 1 for
    // a noiseless Eve and strictly positive otherwise.
    if (p.sigma2_e == 0.0 && c.epsilon < 1.0) return best;
    if (c.epsilon == 0.0) return best;

    // The secrecy cap forces a minimum rate gap that grows as the cap
    // tightens; extend the searched r_b range to keep the feasible set in
    // view. (The search itself stays a plain grid.)
    double r_b_max = grid.r_b_max;
    if (p.sigma2_e > 0.0 && c.epsilon < 1.0) {
        const double min_gap = std::log2(1.0 - p.p_a * p.gbar_ae * std::log(c.epsilon) / p.sigma2_e);
        r_b_max = std::min(grid.r_b_max + std::max(min_gap, 0.0), 40.0);
    }

    // With the gate at 2^{r_b}-1 the conditional connection outage is 0, so
    // delta never binds, and throughput rises with r_s at fixed r_b: scan
    // each column from the top and keep its first feasible rate.
    auto sweep = [&](double b_lo, double b_hi, double s_hi, double step) {
        const long i0 = std::max(1L, std::lround(std::ceil(b_lo / step - 1e-9)));
        const long i1 = std::lround(std::floor(b_hi / step + 1e-9));
        for (long i = i0; i <= i1; ++i) {
            const double r_b = double(i) * step;
            const long j1 = std::lround(std::floor(std::min(r_b, s_hi) / step + 1e-9));
            for (long j = j1; j >= 1; --j) {
                const double r_s = std::min(double(j) * step, r_b);
                if (!meets(onoff_secrecy_outage(p, r_b, r_s), c.epsilon)) continue;
                OnOffDesign d{std::exp2(r_b) - 1.0, r_b, r_s};
                const double eta = onoff_throughput(p, d);
                if (eta > best.eta) {
                    best.eta = eta;
                    best.design = d;
                    best.feasible = true;
                }
                break;
            }
        }
    };
    sweep(0.0, r_b_max, r_b_max, grid.coarse_step);
    const double steps[2] = {grid.fine_step, grid.polish_step};
    double prev = grid.coarse_step;
    for (double step : steps) {
        if (!best.feasible || step >= prev) break;
        const double pad = 2.0 * prev;
        sweep(std::max(best.design.r_b - pad, 0.0), std::min(best.design.r_b + pad, r_b_max),
              best.design.r_s + pad, step);
        prev = step;
    }
    if (!best.feasible) best.eta = 0.0;
    return best;
}

} // namespace ansec
