#ifndef ANSEC_SIMULATE_HPP
#define ANSEC_SIMULATE_HPP

#include <cstdint>

#include "ansec/params.hpp"
#include "ansec/rng.hpp"

// Monte Carlo estimation of the outage probabilities and throughput, plus a
// symbol-level simulation of the two-phase signal chain and the on-off
// benchmark. Fading blocks are keyed to RNG substreams by block index, so
// every kernel is bit-identical for any worker count; the *_serial variants
// are the plain-loop references the parallel kernels are tested against.

namespace ansec {

enum class SimMode { fading_level, symbol_level };

struct SimConfig {
    std::uint64_t n_blocks = 1;
    RngSpec rng;
    SimMode mode = SimMode::fading_level;
    std::uint64_t symbols_per_block = 1;  // symbol-level only
};

inline void validate(const SimConfig& cfg) {
    if (cfg.n_blocks < 1) throw invalid_parameter("n_blocks must be >= 1");
    if (cfg.symbols_per_block < 1) throw invalid_parameter("symbols_per_block must be >= 1");
    validate(cfg.rng);
}

/// Outage frequencies with binomial standard errors.
struct EmpiricalReport {
    double p_so_hat = 0.0;
    double p_so_se = 0.0;
    double p_co_hat = 0.0;
    double p_co_se = 0.0;
    double eta_hat = 0.0;
    std::uint64_t n_blocks = 0;
    bool se_degenerate = false;  // n < 2 or an estimate pinned at 0/1
};

EmpiricalReport simulate_outage(const SystemParams&, const TxDesign&, const SimConfig&);
EmpiricalReport simulate_outage_serial(const SystemParams&, const TxDesign&, const SimConfig&);

/// How Alice scales the captured Phase-1 signal before forwarding:
/// per_symbol divides by |y_a1| symbol by symbol; expected_power divides by
/// sqrt(Pb*g + sigma2_a), the normalization Bob's canceller assumes.
enum class AnNormalization { expected_power, per_symbol };

/// Measured signal chain at Bob (and Eve's Phase-2 SINR) against the
/// closed-form predictions for the same fading draws.
struct SymbolLevelReport {
    double mean_measured_snr_bob = 0.0;       // per-block measured, averaged
    double mean_predicted_snr_bob = 0.0;      // per-block closed form, averaged
    double snr_ratio_mean = 0.0;              // mean of measured/predicted per block
    double mean_measured_residual_power = 0.0;
    double mean_predicted_residual_power = 0.0;
    double an_residual_correlation = 0.0;     // |corr| between Bob's residual and the AN
    double mean_measured_sinr_eve = 0.0;
    double mean_predicted_sinr_eve = 0.0;
    double mean_eve_phase1_power = 0.0;       // ~ Pb*gbar_be + sigma2_e
    std::uint64_t resampled_symbols = 0;      // |y_a1| = 0 events, redrawn
    std::uint64_t n_blocks = 0;
    std::uint64_t symbols_per_block = 0;
};

SymbolLevelReport simulate_symbol_level(const SystemParams&, const TxDesign&, const SimConfig&,
                                        AnNormalization normalization = AnNormalization::expected_power);
SymbolLevelReport simulate_symbol_level_serial(const SystemParams&, const TxDesign&, const SimConfig&,
                                               AnNormalization normalization = AnNormalization::expected_power);

/// Single-phase on-off benchmark: transmit at full power when Bob's direct
/// SNR Pa*g/sigma2_b clears the threshold.
struct OnOffDesign {
    double threshold = 0.0;  // SNR gate
    double r_b = 1.0;
    double r_s = 1.0;
};

inline void validate(const OnOffDesign& d) {
    if (!(d.threshold >= 0.0)) throw invalid_parameter("threshold must be >= 0");
    if (!(d.r_s > 0.0)) throw invalid_parameter("r_s must be > 0");
    if (!(d.r_b >= d.r_s)) throw invalid_parameter("r_b must be >= r_s");
}

/// Outage estimates conditioned on transmitting blocks, plus the on fraction.
struct OnOffReport {
    EmpiricalReport outage;           // p_so/p_co conditional on transmission
    double transmit_fraction = 0.0;
    std::uint64_t transmitted_blocks = 0;
};

OnOffReport simulate_benchmark_onoff(const SystemParams&, const OnOffDesign&, const SimConfig&);
OnOffReport simulate_benchmark_onoff_serial(const SystemParams&, const OnOffDesign&, const SimConfig&);

// Closed forms for the benchmark, used by the optimizer and the CLI columns.
double onoff_transmit_probability(const SystemParams&, double threshold);
double onoff_secrecy_outage(const SystemParams&, double r_b, double r_s);
double onoff_connection_outage(const SystemParams&, const OnOffDesign&);  // conditional on transmit
double onoff_throughput(const SystemParams&, const OnOffDesign&);         // P(tx)*(1-P_co|tx)*r_s

} // namespace ansec

#endif
