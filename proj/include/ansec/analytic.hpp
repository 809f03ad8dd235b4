#ifndef ANSEC_ANALYTIC_HPP
#define ANSEC_ANALYTIC_HPP

#include <algorithm>
#include <cmath>
#include <limits>

#include "ansec/params.hpp"
#include "ansec/quadrature.hpp"

// Closed-form machinery for the two-phase AN injection scheme: the SNR maps
// at Bob and Eve, their inverses and densities, the secrecy/connection outage
// probabilities, and the throughput, in both the general and the asymptotic
// (sigma2_a = 0) regimes.

namespace ansec {

/// Intermediate quantities of Bob's SNR map, evaluated at a given gamma_b.
/// omega2 is 0 exactly when sigma2_a = 0 and positive otherwise; omega3 is
/// the numerator of the derivative term, omega1 * domega1/dgamma + 2*alpha*omega2.
struct OmegaTerms {
    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega3 = 0.0;
};

inline OmegaTerms omega_terms(double gamma_b, const SystemParams& p, const TxDesign& d) {
    OmegaTerms w;
    w.omega1 = ((1.0 - d.alpha) * gamma_b - d.alpha) * p.p_a * p.sigma2_a
             + p.p_b * gamma_b * p.sigma2_b;
    w.omega2 = p.p_a * p.p_b * p.sigma2_a * p.sigma2_b;
    const double omega1_slope = (1.0 - d.alpha) * p.p_a * p.sigma2_a + p.p_b * p.sigma2_b;
    w.omega3 = w.omega1 * omega1_slope + 2.0 * d.alpha * w.omega2;
    return w;
}

/// Bob's post-cancellation SNR for one fading draw (reciprocal link: the
/// Bob->Alice gain equals g_ab). Monotone nondecreasing in g_ab.
inline double snr_bob(double g_ab, const SystemParams& p, const TxDesign& d) {
    if (!(g_ab >= 0.0)) throw invalid_parameter("g_ab must be >= 0");
    const double forwarded_noise =
        p.sigma2_a == 0.0
            ? 0.0
            : (1.0 - d.alpha) * p.p_a * g_ab * p.sigma2_a / (p.p_b * g_ab + p.sigma2_a);
    return d.alpha * p.p_a * g_ab / (forwarded_noise + p.sigma2_b);
}

/// Eve's SINR, with the forwarded AN acting as interference. Bounded above by
/// alpha/(1-alpha) when alpha < 1. For alpha = 1 with sigma2_e = 0 the SNR is
/// unbounded and +inf is returned.
inline double snr_eve(double g_ae, const SystemParams& p, const TxDesign& d) {
    if (!(g_ae >= 0.0)) throw invalid_parameter("g_ae must be >= 0");
    const double den = (1.0 - d.alpha) * p.p_a * g_ae + p.sigma2_e;
    if (den == 0.0) {
        return g_ae == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return d.alpha * p.p_a * g_ae / den;
}

/// Hard ceiling on Eve's SINR: alpha/(1-alpha), +inf at alpha = 1.
inline double eve_snr_ceiling(const TxDesign& d) {
    return d.alpha < 1.0 ? d.alpha / (1.0 - d.alpha)
                         : std::numeric_limits<double>::infinity();
}

/// Inverse of Bob's SNR map: the g_ab that produces gamma_b. Positive root of
/// alpha*Pa*Pb*g^2 - omega1*g - gamma*sigma2_a*sigma2_b = 0, evaluated in the
/// cancellation-free form for either sign of omega1.
inline double inv_snr_bob(double gamma_b, const SystemParams& p, const TxDesign& d) {
    if (!(gamma_b >= 0.0)) throw invalid_parameter("gamma_b must be >= 0");
    const OmegaTerms w = omega_terms(gamma_b, p, d);
    const double root = std::sqrt(w.omega1 * w.omega1 + 4.0 * d.alpha * w.omega2 * gamma_b);
    double g;
    if (w.omega1 >= 0.0) {
        g = (w.omega1 + root) / (2.0 * d.alpha * p.p_a * p.p_b);
    } else {
        const double num = 2.0 * w.omega2 * gamma_b;
        g = num == 0.0 ? 0.0 : num / (p.p_a * p.p_b * (root - w.omega1));
    }
    return std::max(g, 0.0);
}

/// Inverse of Eve's SINR map; defined on [0, alpha/(1-alpha)).
inline double inv_snr_eve(double gamma_e, const SystemParams& p, const TxDesign& d) {
    if (!(gamma_e >= 0.0)) throw invalid_parameter("gamma_e must be >= 0");
    const double margin = d.alpha - (1.0 - d.alpha) * gamma_e;
    if (!(margin > 0.0)) throw invalid_parameter("gamma_e is at or beyond the SINR ceiling");
    return gamma_e * p.sigma2_e / (p.p_a * margin);
}

/// Density of Bob's SNR: f_g(Phi^-1(gamma)) * dPhi^-1/dgamma.
inline double pdf_snr_bob(double gamma_b, const SystemParams& p, const TxDesign& d) {
    if (gamma_b < 0.0) return 0.0;
    const OmegaTerms w = omega_terms(gamma_b, p, d);
    const double slope = (1.0 - d.alpha) * p.p_a * p.sigma2_a + p.p_b * p.sigma2_b;
    const double root = std::sqrt(w.omega1 * w.omega1 + 4.0 * d.alpha * w.omega2 * gamma_b);
    // root = 0 only at the (gamma = 0, sigma2_a = 0) corner, where the ratio -> slope
    const double ratio = root > 0.0 ? w.omega3 / root : slope;
    const double dinv = (slope + ratio) / (2.0 * d.alpha * p.p_a * p.p_b);
    return std::exp(-inv_snr_bob(gamma_b, p, d) / p.gbar_ab) / p.gbar_ab * dinv;
}

/// CDF of Bob's SNR through the inverse map (the closed route).
inline double cdf_snr_bob(double gamma_b, const SystemParams& p, const TxDesign& d) {
    if (gamma_b <= 0.0) return 0.0;
    return -std::expm1(-inv_snr_bob(gamma_b, p, d) / p.gbar_ab);
}

/// Density of Eve's SINR on its support [0, alpha/(1-alpha)); zero outside,
/// zero at the endpoint (limit from outside). Degenerate when sigma2_e = 0
/// (the SINR is then the constant alpha/(1-alpha)).
inline double pdf_snr_eve(double gamma_e, const SystemParams& p, const TxDesign& d) {
    if (gamma_e < 0.0) return 0.0;
    const double margin = d.alpha - (1.0 - d.alpha) * gamma_e;
    if (!(margin > 0.0)) return 0.0;
    const double decay = gamma_e * p.sigma2_e / (p.gbar_ae * p.p_a * margin);
    if (decay > 700.0) return 0.0;  // exp underflows before 1/margin^2 overflows
    return d.alpha * p.sigma2_e / (p.p_a * p.gbar_ae * margin * margin) * std::exp(-decay);
}

/// P(SINR_e > gamma_e); survival function of Eve's SINR.
inline double survival_snr_eve(double gamma_e, const SystemParams& p, const TxDesign& d) {
    if (gamma_e < 0.0) return 1.0;
    const double margin = d.alpha - (1.0 - d.alpha) * gamma_e;
    if (!(margin > 0.0)) return 0.0;
    return std::exp(-gamma_e * p.sigma2_e / (p.gbar_ae * p.p_a * margin));
}

/// Largest power split with zero secrecy outage for the given rate pair.
/// Every boundary comparison in the library goes through this one expression
/// so that a design constructed to sit on the boundary compares as on it.
inline double perfect_secrecy_boundary(double r_b, double r_s) {
    return 1.0 - std::exp2(r_s - r_b);
}

/// Secrecy outage probability: P(C_e > r_b - r_s). Exactly 0 for
/// alpha <= 1 - 2^(r_s - r_b) (boundary inclusive: at equality the nonzero
/// branch tends to exp(-inf), so both branches agree on 0). With sigma2_e = 0
/// and alpha above the boundary the probability is 1.
inline double secrecy_outage(const SystemParams& p, const TxDesign& d) {
    validate(p);
    validate(d);
    const double pow_b = std::exp2(d.r_b);
    const double pow_s = std::exp2(d.r_s);
    if (d.alpha <= perfect_secrecy_boundary(d.r_b, d.r_s)) return 0.0;
    const double den = (pow_s + (d.alpha - 1.0) * pow_b) * p.gbar_ae * p.p_a;
    if (!(den > 0.0)) return 0.0;  // same boundary, seen through the denominator
    return std::exp(-(pow_b - pow_s) * p.sigma2_e / den);
}

/// Connection outage probability P(C_b < r_b), closed route: monotonicity of
/// the SNR map turns the density integral into an exponential CDF evaluation.
inline double connection_outage(const SystemParams& p, const TxDesign& d) {
    validate(p);
    validate(d);
    return cdf_snr_bob(std::exp2(d.r_b) - 1.0, p, d);
}

/// Connection outage via adaptive quadrature of the SNR density. Kept as an
/// independent route; tests hold the two within 1e-8 of each other.
inline double connection_outage_quadrature(const SystemParams& p, const TxDesign& d,
                                           const QuadControl& ctrl = {}) {
    validate(p);
    validate(d);
    const double gamma_th = std::exp2(d.r_b) - 1.0;
    return integrate_or_throw([&](double g) { return pdf_snr_bob(g, p, d); },
                              0.0, gamma_th, ctrl);
}

/// Closed route cross-checked against the quadrature route at call time;
/// throws numerical_failure if the two disagree beyond tol.
inline double connection_outage_checked(const SystemParams& p, const TxDesign& d,
                                        double tol = 1e-8) {
    const double closed = connection_outage(p, d);
    const double quad = connection_outage_quadrature(p, d);
    if (std::fabs(closed - quad) > tol) {
        throw numerical_failure("connection outage routes disagree", std::fabs(closed - quad));
    }
    return closed;
}

inline double throughput_from_pco(double p_co, double r_s) {
    return 0.5 * (1.0 - p_co) * r_s;  // two time units per transmission
}

inline double throughput(const SystemParams& p, const TxDesign& d) {
    return throughput_from_pco(connection_outage(p, d), d.r_s);
}

inline PerformanceReport analyze(const SystemParams& p, const TxDesign& d) {
    PerformanceReport r;
    r.p_so = secrecy_outage(p, d);
    r.p_co = connection_outage(p, d);
    r.eta = throughput_from_pco(r.p_co, d.r_s);
    r.method = Method::analytic_general;
    return r;
}

// --- Asymptotic regime (sigma2_a -> 0): Alice's capture is noiseless and the
// --- residual at Bob is his own AWGN only. sigma2_a in params is ignored.

inline double snr_bob_asymptotic(double g_ab, const SystemParams& p, const TxDesign& d) {
    if (!(g_ab >= 0.0)) throw invalid_parameter("g_ab must be >= 0");
    return d.alpha * p.p_a * g_ab / p.sigma2_b;
}

inline double pdf_snr_bob_asymptotic(double gamma_b, const SystemParams& p, const TxDesign& d) {
    if (gamma_b < 0.0) return 0.0;
    const double rate = p.sigma2_b / (d.alpha * p.p_a * p.gbar_ab);
    return rate * std::exp(-rate * gamma_b);
}

inline double connection_outage_asymptotic(const SystemParams& p, const TxDesign& d) {
    validate(p);
    validate(d);
    return -std::expm1(-p.sigma2_b * (std::exp2(d.r_b) - 1.0) / (d.alpha * p.p_a * p.gbar_ab));
}

inline double throughput_asymptotic(const SystemParams& p, const TxDesign& d) {
    return throughput_from_pco(connection_outage_asymptotic(p, d), d.r_s);
}

inline PerformanceReport analyze_asymptotic(const SystemParams& p, const TxDesign& d) {
    PerformanceReport r;
    r.p_so = secrecy_outage(p, d);  // unchanged by the regime
    r.p_co = connection_outage_asymptotic(p, d);
    r.eta = throughput_from_pco(r.p_co, d.r_s);
    r.method = Method::analytic_asymptotic;
    return r;
}

} // namespace ansec

#endif
