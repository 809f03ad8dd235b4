#ifndef ANSEC_CHANNEL_HPP
#define ANSEC_CHANNEL_HPP

#include <complex>
#include <optional>

#include "ansec/params.hpp"
#include "ansec/rng.hpp"

namespace ansec {

struct ChannelCoeffs {
    std::complex<double> h_ab;  // Alice<->Bob (reciprocal, stored once)
    std::complex<double> h_ae;  // Alice->Eve
    std::complex<double> h_be;  // Bob->Eve
};

/// One quasi-static fading realization. Gains are exponential with the
/// configured means; when complex coefficients are present the gains are
/// their squared magnitudes by construction.
struct ChannelDraw {
    double g_ab = 0.0;
    double g_ae = 0.0;
    std::optional<ChannelCoeffs> coeffs;
};

/// Exponential channel power gain with mean gbar.
inline double sample_gain(double gbar, RandomStream& rng) {
    if (!(gbar > 0.0)) throw invalid_parameter("average power gain must be > 0");
    return rng.exponential(gbar);
}

/// Independent (g_ab, g_ae) pair for one fading block.
inline ChannelDraw sample_draw(const SystemParams& params, RandomStream& rng) {
    validate(params);
    ChannelDraw draw;
    draw.g_ab = sample_gain(params.gbar_ab, rng);
    draw.g_ae = sample_gain(params.gbar_ae, rng);
    return draw;
}

/// Complex-coefficient variant for the symbol-level signal chain. h_be is
/// drawn only when gbar_be is configured.
inline ChannelDraw sample_draw_complex(const SystemParams& params, RandomStream& rng) {
    validate(params);
    ChannelCoeffs c;
    c.h_ab = rng.complex_gaussian(params.gbar_ab);
    c.h_ae = rng.complex_gaussian(params.gbar_ae);
    c.h_be = params.gbar_be > 0.0 ? rng.complex_gaussian(params.gbar_be) : std::complex<double>{0.0, 0.0};
    ChannelDraw draw;
    draw.g_ab = std::norm(c.h_ab);
    draw.g_ae = std::norm(c.h_ae);
    draw.coeffs = c;
    return draw;
}

} // namespace ansec

#endif
