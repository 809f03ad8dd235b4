#ifndef ANSEC_OPTIMIZE_HPP
#define ANSEC_OPTIMIZE_HPP

#include <optional>

#include "ansec/params.hpp"
#include "ansec/simulate.hpp"

// Constrained design optimization: the largest power split meeting a secrecy
// cap, the feasible (epsilon, delta) region, the closed-form joint rate/power
// design of the asymptotic regime, and brute-force grid oracles that certify
// the closed forms and cover the general regime.

namespace ansec {

struct FeasibleRegion {
    double delta_l = 0.0;  // smallest admissible connection-outage cap (exclusive)
};

/// phi1/phi2/psi quantities of the closed-form joint design.
struct DesignAux {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double psi = 0.0;
    bool interior_branch = false;  // true when psi (not the delta cap) sets r_s
};

struct DesignSolution {
    TxDesign design;
    double eta = 0.0;
    bool feasible = false;
    bool secrecy_binding = false;     // |P_so - epsilon| <= 1e-6
    bool connection_binding = false;  // |P_co - delta| <= 1e-6
    std::optional<DesignAux> aux;     // set by the closed-form path only
};

/// Multiplier >= 1 extending the perfect-secrecy power boundary to the
/// largest alpha with P_so <= epsilon. 1 at epsilon = 0 or sigma2_e = 0;
/// unbounded as epsilon -> 1.
double secrecy_slack_factor(const SystemParams&, double epsilon);

/// Largest alpha meeting P_so <= epsilon for fixed rates, capped at 1.
/// epsilon = 1 removes the secrecy constraint, so the cap is returned.
/// Can return 0 (meaning: no admissible alpha) when r_b = r_s with epsilon < 1.
double optimal_alpha(const SystemParams&, double r_b, double r_s, double epsilon);

/// Infimum of the achievable connection outage under P_so <= epsilon, in the
/// asymptotic regime (sigma2_a treated as 0). (epsilon, delta) is feasible
/// iff delta > delta_l. delta_l = 0 at epsilon = 1 (no secrecy constraint).
FeasibleRegion feasibility(const SystemParams&, double epsilon);
bool is_feasible(const SystemParams&, const OutageConstraints&);

/// Left side of the stationarity equation the interior confidential rate
/// solves; strictly decreasing from +inf (x -> 0) to 0 (x -> inf).
double psi_equation_lhs(double x);

/// Right side of that equation; requires epsilon < 1, accepts epsilon = 0.
double psi_equation_rhs(const SystemParams&, double epsilon);

/// Unique positive root of psi_equation_lhs(x) = rhs, by bracketing plus
/// bisection to |dx| < 1e-12. Throws numerical_failure if the bracket cannot
/// be established or the left side is not monotone across it.
double solve_psi_equation(double rhs);
double solve_psi(const SystemParams&, double epsilon);

/// Closed-form joint (alpha, r_b, r_s) design of the asymptotic regime.
/// Requires sigma2_a = 0 and epsilon < 1; throws invalid_parameter when the
/// computed alpha* exceeds 1 (the closed form's interior assumption fails for
/// very loose secrecy constraints; use grid_oracle there).
DesignSolution joint_design(const SystemParams&, const OutageConstraints&);

/// Rate grids for the brute-force oracles: r_b on (0, r_b_max], r_s on
/// (0, r_b], with coarse-to-fine refinement down to polish_step.
struct GridSpec {
    double r_b_max = 8.0;
    double coarse_step = 0.02;
    double fine_step = 1e-3;
    double polish_step = 1e-4;
};

/// Exhaustive throughput maximization with alpha = optimal_alpha at every
/// rate pair, constraints checked with the general finite-sigma2_a formulas.
/// Serves as the general-regime optimizer and as the certification oracle
/// for joint_design.
DesignSolution grid_oracle(const SystemParams&, const OutageConstraints&, const GridSpec& = {});
DesignSolution grid_oracle_serial(const SystemParams&, const OutageConstraints&, const GridSpec& = {});

/// Best on-off benchmark design under the same constraints. The SNR gate is
/// pinned to 2^r_b - 1: any lower gate gives the same throughput but a
/// positive conditional connection outage, any higher one only loses blocks.
struct OnOffSolution {
    OnOffDesign design;
    double eta = 0.0;
    bool feasible = false;
};

OnOffSolution onoff_optimize(const SystemParams&, const OutageConstraints&, const GridSpec& = {});

} // namespace ansec

#endif
