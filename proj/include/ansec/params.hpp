#ifndef ANSEC_PARAMS_HPP
#define ANSEC_PARAMS_HPP

#include <string>

#include "ansec/errors.hpp"

namespace ansec {

/// Physical scenario: power budgets, noise levels, and average channel power
/// gains, all in linear watts / dimensionless ratios. dB conversion happens
/// only at the CLI boundary.
struct SystemParams {
    double p_a = 1.0;       // average transmit power at Alice
    double p_b = 1.0;       // average transmit power at Bob
    double sigma2_a = 0.0;  // AWGN variance at Alice (0 = ideal capture)
    double sigma2_b = 1.0;  // AWGN variance at Bob
    double sigma2_e = 0.0;  // AWGN variance at Eve (0 = worst case)
    double gbar_ab = 1.0;   // average power gain Alice<->Bob (reciprocal link)
    double gbar_ae = 1.0;   // average power gain Alice->Eve
    double gbar_be = 0.0;   // average power gain Bob->Eve; symbol-level simulator only
};

/// Operating point of the two-phase transmission: power split and wiretap-code rates.
struct TxDesign {
    double alpha = 1.0;  // fraction of Alice's power on the information signal, (0, 1]
    double r_b = 1.0;    // codeword transmission rate, bits/channel use
    double r_s = 1.0;    // confidential information rate, bits/channel use
};

/// Caps on the secrecy and connection outage probabilities.
struct OutageConstraints {
    double epsilon = 1.0;  // max secrecy outage probability
    double delta = 1.0;    // max connection outage probability
};

enum class Method {
    analytic_general,
    analytic_asymptotic,
    monte_carlo,
};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::analytic_general: return "analytic-general";
        case Method::analytic_asymptotic: return "analytic-asymptotic";
        case Method::monte_carlo: return "monte-carlo";
    }
    return "?";
}

/// Outage/throughput triple for one operating point.
struct PerformanceReport {
    double p_so = 0.0;
    double p_co = 0.0;
    double eta = 0.0;  // always 0.5 * (1 - p_co) * r_s
    Method method = Method::analytic_general;
};

inline void validate(const SystemParams& p) {
    if (!(p.p_a > 0.0)) throw invalid_parameter("p_a must be > 0");
    if (!(p.p_b > 0.0)) throw invalid_parameter("p_b must be > 0");
    if (!(p.sigma2_a >= 0.0)) throw invalid_parameter("sigma2_a must be >= 0");
    if (!(p.sigma2_b > 0.0)) throw invalid_parameter("sigma2_b must be > 0");
    if (!(p.sigma2_e >= 0.0)) throw invalid_parameter("sigma2_e must be >= 0");
    if (!(p.gbar_ab > 0.0)) throw invalid_parameter("gbar_ab must be > 0");
    if (!(p.gbar_ae > 0.0)) throw invalid_parameter("gbar_ae must be > 0");
    if (!(p.gbar_be >= 0.0)) throw invalid_parameter("gbar_be must be >= 0");
}

inline void validate(const TxDesign& d) {
    if (!(d.alpha > 0.0 && d.alpha <= 1.0)) throw invalid_parameter("alpha must be in (0, 1]");
    if (!(d.r_s > 0.0)) throw invalid_parameter("r_s must be > 0");
    if (!(d.r_b >= d.r_s)) throw invalid_parameter("r_b must be >= r_s");
}

inline void validate(const OutageConstraints& c) {
    if (!(c.epsilon >= 0.0 && c.epsilon <= 1.0)) throw invalid_parameter("epsilon must be in [0, 1]");
    if (!(c.delta >= 0.0 && c.delta <= 1.0)) throw invalid_parameter("delta must be in [0, 1]");
}

} // namespace ansec

#endif
