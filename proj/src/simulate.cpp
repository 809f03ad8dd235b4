#include "ansec/simulate.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "ansec/analytic.hpp"
#include "ansec/channel.hpp"

namespace ansec {

namespace {

double binomial_se(double p_hat, std::uint64_t n) {
    return n > 0 ? std::sqrt(p_hat * (1.0 - p_hat) / double(n)) : 0.0;
}

EmpiricalReport make_report(std::uint64_t so, std::uint64_t co, std::uint64_t n, double r_s) {
    EmpiricalReport rep;
    rep.n_blocks = n;
    rep.p_so_hat = double(so) / double(n);
    rep.p_co_hat = double(co) / double(n);
    rep.p_so_se = binomial_se(rep.p_so_hat, n);
    rep.p_co_se = binomial_se(rep.p_co_hat, n);
    rep.eta_hat = 0.5 * (1.0 - rep.p_co_hat) * r_s;
    rep.se_degenerate = n < 2
        || rep.p_so_hat == 0.0 || rep.p_so_hat == 1.0
        || rep.p_co_hat == 0.0 || rep.p_co_hat == 1.0;
    return rep;
}

// One fading block of the two-phase scheme. Pure function of the block index.
inline void outage_block(std::uint64_t block, const SystemParams& p, const TxDesign& d,
                         const RngSpec& rng, double cap_gap,
                         std::uint64_t& so, std::uint64_t& co) {
    RandomStream stream(rng, block);
    const double g_ab = stream.exponential(p.gbar_ab);
    const double g_ae = stream.exponential(p.gbar_ae);
    const double gamma_b = snr_bob(g_ab, p, d);
    const double gamma_e = snr_eve(g_ae, p, d);
    so += std::log2(1.0 + gamma_e) > cap_gap ? 1u : 0u;
    co += std::log2(1.0 + gamma_b) < d.r_b ? 1u : 0u;
}

} // namespace

EmpiricalReport simulate_outage(const SystemParams& p, const TxDesign& d, const SimConfig& cfg) {
    validate(p);
    validate(d);
    validate(cfg);
    const double cap_gap = d.r_b - d.r_s;
    const std::int64_t n = std::int64_t(cfg.n_blocks);
    std::uint64_t so = 0, co = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : so, co) schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        outage_block(std::uint64_t(i), p, d, cfg.rng, cap_gap, so, co);
    }
    return make_report(so, co, cfg.n_blocks, d.r_s);
}

EmpiricalReport simulate_outage_serial(const SystemParams& p, const TxDesign& d, const SimConfig& cfg) {
    validate(p);
    validate(d);
    validate(cfg);
    const double cap_gap = d.r_b - d.r_s;
    std::uint64_t so = 0, co = 0;
    for (std::uint64_t i = 0; i < cfg.n_blocks; ++i) {
        outage_block(i, p, d, cfg.rng, cap_gap, so, co);
    }
    return make_report(so, co, cfg.n_blocks, d.r_s);
}

// ---------------------------------------------------------------------------
// Symbol-level chain

namespace {

struct BlockStats {
    double measured_snr = 0.0;
    double predicted_snr = 0.0;
    double measured_residual = 0.0;
    double predicted_residual = 0.0;
    double measured_sinr_eve = 0.0;
    double predicted_sinr_eve = 0.0;
    double eve_phase1_power = 0.0;
    std::complex<double> corr_num{0.0, 0.0};
    double corr_resid_pow = 0.0;
    double corr_an_pow = 0.0;
    std::uint64_t resampled = 0;
};

BlockStats symbol_block(std::uint64_t block, const SystemParams& p, const TxDesign& d,
                        const SimConfig& cfg, AnNormalization normalization) {
    RandomStream stream(cfg.rng, block);
    const ChannelDraw draw = sample_draw_complex(p, stream);
    const ChannelCoeffs& h = *draw.coeffs;

    const double sqrt_pa = std::sqrt(p.p_a);
    const double sqrt_pb = std::sqrt(p.p_b);
    const double sqrt_info = std::sqrt(d.alpha);
    const double sqrt_an = std::sqrt(1.0 - d.alpha);
    // Normalization Bob's canceller assumes; also the expected-power divisor.
    const double nominal_norm = std::sqrt(p.p_b * draw.g_ab + p.sigma2_a);

    double sig_pow = 0.0, resid_pow = 0.0;
    double eve_sig_pow = 0.0, eve_int_pow = 0.0, eve_phase1_pow = 0.0;
    std::complex<double> corr_num{0.0, 0.0};
    double corr_resid = 0.0, corr_an = 0.0;
    std::uint64_t resampled = 0;

    for (std::uint64_t k = 0; k < cfg.symbols_per_block; ++k) {
        std::complex<double> an, y_a1;
        for (;;) {
            an = stream.complex_gaussian(1.0);
            y_a1 = sqrt_pb * h.h_ab * an + stream.complex_gaussian(p.sigma2_a);
            if (std::abs(y_a1) > 0.0 || d.alpha == 1.0) break;
            ++resampled;
        }
        const std::complex<double> info = stream.complex_gaussian(1.0);
        const std::complex<double> n_b = stream.complex_gaussian(p.sigma2_b);
        const std::complex<double> n_e2 = stream.complex_gaussian(p.sigma2_e);
        const std::complex<double> n_e1 = stream.complex_gaussian(p.sigma2_e);

        std::complex<double> x_a = sqrt_info * info;
        const bool forwards = d.alpha < 1.0 && nominal_norm > 0.0;
        if (forwards) {
            const double norm = normalization == AnNormalization::per_symbol
                                    ? std::abs(y_a1)
                                    : nominal_norm;
            x_a += sqrt_an * y_a1 / norm;
        }

        const std::complex<double> y_b2 = sqrt_pa * h.h_ab * x_a + n_b;
        // Bob knows Pa, Pb, alpha, sigma2_a, h_ab, g_ab and the AN he sent;
        // he reconstructs the AN component under the nominal normalization.
        const std::complex<double> cancel =
            forwards ? sqrt_an * sqrt_pa * h.h_ab * (sqrt_pb * h.h_ab * an) / nominal_norm
                     : std::complex<double>{0.0, 0.0};
        const std::complex<double> signal = sqrt_info * sqrt_pa * h.h_ab * info;
        const std::complex<double> residual = y_b2 - cancel - signal;

        sig_pow += std::norm(signal);
        resid_pow += std::norm(residual);
        corr_num += residual * std::conj(an);
        corr_resid += std::norm(residual);
        corr_an += std::norm(an);

        const std::complex<double> eve_signal = sqrt_info * sqrt_pa * h.h_ae * info;
        const std::complex<double> y_e2 = sqrt_pa * h.h_ae * x_a + n_e2;
        eve_sig_pow += std::norm(eve_signal);
        eve_int_pow += std::norm(y_e2 - eve_signal);
        eve_phase1_pow += std::norm(sqrt_pb * h.h_be * an + n_e1);
    }

    const double k = double(cfg.symbols_per_block);
    BlockStats out;
    out.measured_snr = resid_pow > 0.0 ? sig_pow / resid_pow : 0.0;
    out.predicted_snr = snr_bob(draw.g_ab, p, d);
    out.measured_residual = resid_pow / k;
    const double forwarded = p.sigma2_a == 0.0
        ? 0.0
        : (1.0 - d.alpha) * p.p_a * draw.g_ab * p.sigma2_a / (p.p_b * draw.g_ab + p.sigma2_a);
    out.predicted_residual = forwarded + p.sigma2_b;
    out.measured_sinr_eve = eve_int_pow > 0.0 ? eve_sig_pow / eve_int_pow : 0.0;
    out.predicted_sinr_eve = snr_eve(draw.g_ae, p, d);
    out.eve_phase1_power = eve_phase1_pow / k;
    out.corr_num = corr_num;
    out.corr_resid_pow = corr_resid;
    out.corr_an_pow = corr_an;
    out.resampled = resampled;
    return out;
}

SymbolLevelReport reduce_symbol_stats(const std::vector<BlockStats>& stats, const SimConfig& cfg) {
    SymbolLevelReport rep;
    rep.n_blocks = cfg.n_blocks;
    rep.symbols_per_block = cfg.symbols_per_block;
    std::complex<double> corr_num{0.0, 0.0};
    double corr_resid = 0.0, corr_an = 0.0;
    for (const BlockStats& s : stats) {  // fixed order: independent of worker count
        rep.mean_measured_snr_bob += s.measured_snr;
        rep.mean_predicted_snr_bob += s.predicted_snr;
        rep.snr_ratio_mean += s.predicted_snr > 0.0 ? s.measured_snr / s.predicted_snr : 1.0;
        rep.mean_measured_residual_power += s.measured_residual;
        rep.mean_predicted_residual_power += s.predicted_residual;
        rep.mean_measured_sinr_eve += s.measured_sinr_eve;
        rep.mean_predicted_sinr_eve += s.predicted_sinr_eve;
        rep.mean_eve_phase1_power += s.eve_phase1_power;
        corr_num += s.corr_num;
        corr_resid += s.corr_resid_pow;
        corr_an += s.corr_an_pow;
        rep.resampled_symbols += s.resampled;
    }
    const double n = double(cfg.n_blocks);
    rep.mean_measured_snr_bob /= n;
    rep.mean_predicted_snr_bob /= n;
    rep.snr_ratio_mean /= n;
    rep.mean_measured_residual_power /= n;
    rep.mean_predicted_residual_power /= n;
    rep.mean_measured_sinr_eve /= n;
    rep.mean_predicted_sinr_eve /= n;
    rep.mean_eve_phase1_power /= n;
    const double denom = std::sqrt(corr_resid * corr_an);
    rep.an_residual_correlation = denom > 0.0 ? std::abs(corr_num) / denom : 0.0;
    return rep;
}

} // namespace

SymbolLevelReport simulate_symbol_level(const SystemParams& p, const TxDesign& d,
                                        const SimConfig& cfg, AnNormalization normalization) {
    validate(p);
    validate(d);
    validate(cfg);
    std::vector<BlockStats> stats(cfg.n_blocks);
    const std::int64_t n = std::int64_t(cfg.n_blocks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        stats[std::size_t(i)] = symbol_block(std::uint64_t(i), p, d, cfg, normalization);
    }
    return reduce_symbol_stats(stats, cfg);
}

SymbolLevelReport simulate_symbol_level_serial(const SystemParams& p, const TxDesign& d,
                                               const SimConfig& cfg, AnNormalization normalization) {
    validate(p);
    validate(d);
    validate(cfg);
    std::vector<BlockStats> stats(cfg.n_blocks);
    for (std::uint64_t i = 0; i < cfg.n_blocks; ++i) {
        stats[std::size_t(i)] = symbol_block(i, p, d, cfg, normalization);
    }
    return reduce_symbol_stats(stats, cfg);
}

// ---------------------------------------------------------------------------
// On-off benchmark

namespace {

inline void onoff_block(std::uint64_t block, const SystemParams& p, const OnOffDesign& d,
                        const RngSpec& rng, std::uint64_t& tx, std::uint64_t& so, std::uint64_t& co) {
    RandomStream stream(rng, block);
    const double g_ab = stream.exponential(p.gbar_ab);
    const double g_ae = stream.exponential(p.gbar_ae);
    const double gamma_b = p.p_a * g_ab / p.sigma2_b;
    if (gamma_b < d.threshold) return;
    ++tx;
    bool eve_outage;
    if (p.sigma2_e == 0.0) {
        eve_outage = g_ae > 0.0;  // unbounded eavesdropper SNR
    } else {
        eve_outage = std::log2(1.0 + p.p_a * g_ae / p.sigma2_e) > d.r_b - d.r_s;
    }
    so += eve_outage ? 1u : 0u;
    co += std::log2(1.0 + gamma_b) < d.r_b ? 1u : 0u;
}

OnOffReport make_onoff_report(std::uint64_t tx, std::uint64_t so, std::uint64_t co,
                              std::uint64_t n, double r_s) {
    OnOffReport rep;
    rep.transmitted_blocks = tx;
    rep.transmit_fraction = double(tx) / double(n);
    rep.outage.n_blocks = tx;
    if (tx > 0) {
        rep.outage.p_so_hat = double(so) / double(tx);
        rep.outage.p_co_hat = double(co) / double(tx);
        rep.outage.p_so_se = binomial_se(rep.outage.p_so_hat, tx);
        rep.outage.p_co_se = binomial_se(rep.outage.p_co_hat, tx);
    }
    rep.outage.se_degenerate = tx < 2
        || rep.outage.p_so_hat == 0.0 || rep.outage.p_so_hat == 1.0
        || rep.outage.p_co_hat == 0.0 || rep.outage.p_co_hat == 1.0;
    // single phase: no 1/2 factor
    rep.outage.eta_hat = rep.transmit_fraction * (1.0 - rep.outage.p_co_hat) * r_s;
    return rep;
}

} // namespace

OnOffReport simulate_benchmark_onoff(const SystemParams& p, const OnOffDesign& d, const SimConfig& cfg) {
    validate(p);
    validate(d);
    validate(cfg);
    const std::int64_t n = std::int64_t(cfg.n_blocks);
    std::uint64_t tx = 0, so = 0, co = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : tx, so, co) schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
        onoff_block(std::uint64_t(i), p, d, cfg.rng, tx, so, co);
    }
    return make_onoff_report(tx, so, co, cfg.n_blocks, d.r_s);
}

OnOffReport simulate_benchmark_onoff_serial(const SystemParams& p, const OnOffDesign& d,
                                            const SimConfig& cfg) {
    validate(p);
    validate(d);
    validate(cfg);
    std::uint64_t tx = 0, so = 0, co = 0;
    for (std::uint64_t i = 0; i < cfg.n_blocks; ++i) {
        onoff_block(i, p, d, cfg.rng, tx, so, co);
    }
    return make_onoff_report(tx, so, co, cfg.n_blocks, d.r_s);
}

double onoff_transmit_probability(const SystemParams& p, double threshold) {
    if (!(threshold >= 0.0)) throw invalid_parameter("threshold must be >= 0");
    return std::exp(-threshold * p.sigma2_b / (p.p_a * p.gbar_ab));
}

double onoff_secrecy_outage(const SystemParams& p, double r_b, double r_s) {
    // Eve's SNR is independent of g_ab, so conditioning on transmission
    // changes nothing. sigma2_e = 0 makes her capacity unbounded.
    if (p.sigma2_e == 0.0) return 1.0;
    return std::exp(-(std::exp2(r_b - r_s) - 1.0) * p.sigma2_e / (p.p_a * p.gbar_ae));
}

double onoff_connection_outage(const SystemParams& p, const OnOffDesign& d) {
    const double gamma_th = std::exp2(d.r_b) - 1.0;
    if (d.threshold >= gamma_th) return 0.0;
    const double rate = p.sigma2_b / (p.p_a * p.gbar_ab);
    const double p_tx = std::exp(-d.threshold * rate);
    return (p_tx - std::exp(-gamma_th * rate)) / p_tx;
}

double onoff_throughput(const SystemParams& p, const OnOffDesign& d) {
    return onoff_transmit_probability(p, d.threshold)
         * (1.0 - onoff_connection_outage(p, d)) * d.r_s;
}

} // namespace ansec
