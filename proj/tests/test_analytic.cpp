#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ansec/analytic.hpp"
#include "ansec/channel.hpp"
#include "ansec/rng.hpp"

using namespace ansec;

namespace {

SystemParams fig_params() {
    SystemParams p;
    p.p_a = 10.0;
    p.p_b = 10.0;
    p.sigma2_a = 0.1;
    p.sigma2_b = 0.1;
    p.sigma2_e = 0.1;
    return p;
}

SystemParams random_params(RandomStream& r, bool zero_sigma_a = false) {
    SystemParams p;
    p.p_a = 0.5 + 30.0 * r.uniform_co();
    p.p_b = 0.5 + 30.0 * r.uniform_co();
    p.sigma2_a = zero_sigma_a ? 0.0 : 0.01 + 0.5 * r.uniform_co();
    p.sigma2_b = 0.01 + 0.5 * r.uniform_co();
    p.sigma2_e = 0.01 + 0.5 * r.uniform_co();
    p.gbar_ab = 0.2 + 3.0 * r.uniform_co();
    p.gbar_ae = 0.2 + 3.0 * r.uniform_co();
    return p;
}

TxDesign random_design(RandomStream& r) {
    TxDesign d;
    d.alpha = 0.05 + 0.95 * r.uniform_co();
    d.r_b = 0.3 + 4.0 * r.uniform_co();
    d.r_s = d.r_b * (0.2 + 0.8 * r.uniform_co());
    return d;
}

// 1% upper chi-square quantile via the Wilson-Hilferty approximation.
double chi2_crit_1pct(int dof) {
    const double z = 2.3263478740408408;
    const double d = double(dof);
    const double c = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
    return d * c * c * c;
}

} // namespace

TEST_CASE("snr_bob point values") {
    const TxDesign d{0.7, 2.0, 1.0};
    SystemParams p = fig_params();

    CHECK(snr_bob(0.0, p, d) == 0.0);

    // sigma2_a = 0 collapses to alpha*Pa*g/sigma2_b
    SystemParams asym = p;
    asym.sigma2_a = 0.0;
    CHECK(snr_bob(1.0, asym, TxDesign{0.5, 2.0, 1.0}) == doctest::Approx(50.0).epsilon(1e-14));

    // independent step-by-step evaluation of the SNR expression
    const double g = 1.0;
    const double forwarded = (1.0 - 0.7) * 10.0 * g * 0.1 / (10.0 * g + 0.1);
    const double expected = 0.7 * 10.0 * g / (forwarded + 0.1);
    CHECK(expected == doctest::Approx(53.96946564885496).epsilon(1e-12));  // frozen
    CHECK(snr_bob(g, p, d) == doctest::Approx(expected).epsilon(1e-14));

    CHECK_THROWS_AS(snr_bob(-1.0, p, d), invalid_parameter);
}

TEST_CASE("snr_bob is monotone nondecreasing in g_ab") {
    RandomStream r(RngSpec{555, 1}, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const SystemParams p = random_params(r);
        const TxDesign d = random_design(r);
        double prev = snr_bob(0.0, p, d);
        for (double g = 0.05; g < 10.0; g += 0.35) {
            const double cur = snr_bob(g, p, d);
            REQUIRE(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("snr_eve point values, ceiling, and the alpha=1 sentinel") {
    SystemParams p = fig_params();
    const TxDesign d{0.7, 2.0, 1.0};
    CHECK(snr_eve(0.0, p, d) == 0.0);
    CHECK(snr_eve(1.0, p, d) == doctest::Approx(7.0 / 3.1).epsilon(1e-14));

    // asymptote alpha/(1-alpha) for alpha = 0.5
    const TxDesign half{0.5, 2.0, 1.0};
    CHECK(snr_eve(1e12, p, half) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(eve_snr_ceiling(half) == 1.0);

    RandomStream r(RngSpec{556, 1}, 0);
    for (int i = 0; i < 2000; ++i) {
        const double g = r.exponential(1.0) * 100.0;
        const double v = snr_eve(g, p, half);
        REQUIRE(v < eve_snr_ceiling(half));
        // consequently C_e < -log2(1-alpha)
        REQUIRE(std::log2(1.0 + v) < -std::log2(1.0 - half.alpha));
    }

    // alpha = 1 with noiseless Eve: unbounded SNR
    SystemParams worst = p;
    worst.sigma2_e = 0.0;
    const TxDesign full{1.0, 2.0, 1.0};
    CHECK(std::isinf(snr_eve(1.0, worst, full)));
    CHECK(snr_eve(0.0, worst, full) == 0.0);
}

TEST_CASE("inv_snr_eve round trip and ceiling rejection") {
    const SystemParams p = fig_params();
    RandomStream r(RngSpec{5561, 1}, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const TxDesign d = random_design(r);
        const double ceiling = eve_snr_ceiling(d);
        const double gamma = std::min(r.exponential(1.0), 0.999 * ceiling);
        const double g = inv_snr_eve(gamma, p, d);
        if (gamma > 0.0) {
            REQUIRE(std::fabs(snr_eve(g, p, d) - gamma) / gamma < 1e-10);
        }
    }
    const TxDesign half{0.5, 2.0, 1.0};
    CHECK_THROWS_AS(inv_snr_eve(1.0, p, half), invalid_parameter);   // at the ceiling
    CHECK_THROWS_AS(inv_snr_eve(2.0, p, half), invalid_parameter);   // beyond it
    CHECK(inv_snr_eve(0.0, p, half) == 0.0);
}

TEST_CASE("secrecy outage equals the SINR survival function at the rate gap") {
    RandomStream r(RngSpec{5562, 1}, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p = random_params(r, trial % 6 == 0);
        const TxDesign d = random_design(r);
        const double threshold = std::exp2(d.r_b - d.r_s) - 1.0;
        const double via_survival = survival_snr_eve(threshold, p, d);
        const double direct = secrecy_outage(p, d);
        REQUIRE(std::fabs(direct - via_survival) <= 1e-12 * std::max(1.0, direct));
    }
}

TEST_CASE("inv_snr_bob round trip") {
    CHECK(inv_snr_bob(0.0, fig_params(), TxDesign{0.7, 2, 1}) == 0.0);

    RandomStream r(RngSpec{557, 1}, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const SystemParams p = random_params(r);
        const TxDesign d = random_design(r);
        const double gamma = r.exponential(5.0);
        const double g = inv_snr_bob(gamma, p, d);
        if (gamma > 0.0) {
            REQUIRE(std::fabs(snr_bob(g, p, d) - gamma) / gamma < 1e-10);
        }
        // and the other direction
        const double g0 = r.exponential(p.gbar_ab);
        const double gm = snr_bob(g0, p, d);
        REQUIRE(std::fabs(inv_snr_bob(gm, p, d) - g0) / g0 < 1e-10);
    }
}

TEST_CASE("inv_snr_bob at sigma2_a = 0 reduces to gamma*sigma2_b/(alpha*Pa)") {
    SystemParams p = fig_params();
    p.sigma2_a = 0.0;
    const TxDesign d{0.6, 2.0, 1.0};
    for (double gamma : {0.1, 1.0, 17.5, 300.0}) {
        const double expected = gamma * p.sigma2_b / (d.alpha * p.p_a);
        CHECK(inv_snr_bob(gamma, p, d) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK_THROWS_AS(inv_snr_bob(-0.5, p, d), invalid_parameter);
}

TEST_CASE("omega terms match the expanded derivative numerator") {
    RandomStream r(RngSpec{558, 1}, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p = random_params(r);
        const TxDesign d = random_design(r);
        const double gamma = r.exponential(3.0);
        const OmegaTerms w = omega_terms(gamma, p, d);
        const double a = d.alpha;
        // expanded form: (a + 2(1-a)g)w2 + (1-a)((1-a)g - a)Pa^2 sa^4 + Pb^2 g sb^4
        const double expanded = (a + 2.0 * (1.0 - a) * gamma) * w.omega2
            + (1.0 - a) * ((1.0 - a) * gamma - a) * p.p_a * p.p_a * p.sigma2_a * p.sigma2_a
            + p.p_b * p.p_b * gamma * p.sigma2_b * p.sigma2_b;
        REQUIRE(w.omega3 == doctest::Approx(expanded).epsilon(1e-10));
        REQUIRE(w.omega2 >= 0.0);
        REQUIRE(std::isfinite(w.omega1));
        REQUIRE(std::isfinite(w.omega3));
    }
}

TEST_CASE("pdf_snr_bob integrates to 1") {
    RandomStream r(RngSpec{559, 1}, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const SystemParams p = random_params(r);
        const TxDesign d = random_design(r);
        const QuadResult q = integrate_to_infinity([&](double g) { return pdf_snr_bob(g, p, d); }, 0.0);
        REQUIRE(q.converged);
        REQUIRE(q.value == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("pdf_snr_bob at sigma2_a = 0 matches the exponential closed form") {
    SystemParams p = fig_params();
    p.sigma2_a = 0.0;
    const TxDesign d{0.55, 2.0, 1.0};
    for (double gamma : {0.0, 0.3, 2.0, 25.0, 120.0}) {
        const double expected = pdf_snr_bob_asymptotic(gamma, p, d);
        REQUIRE(std::fabs(pdf_snr_bob(gamma, p, d) - expected) <= 1e-10 * std::max(1.0, expected));
    }
}

TEST_CASE("pdf_snr_bob chi-square against Monte Carlo draws") {
    const SystemParams p = fig_params();
    const TxDesign d{0.7, 2.0, 1.0};
    const int n = 1'000'000;
    const int bins = 40;
    // equal-probability bin edges through the inverse gain CDF
    std::vector<double> edges(bins + 1);
    edges[0] = 0.0;
    for (int j = 1; j < bins; ++j) {
        const double g_q = -p.gbar_ab * std::log1p(-double(j) / bins);
        edges[std::size_t(j)] = snr_bob(g_q, p, d);
    }
    // expected probabilities from the density itself (not the closed CDF)
    std::vector<double> prob(bins);
    double tail = 1.0;
    for (int j = 0; j + 1 < bins; ++j) {
        prob[std::size_t(j)] = integrate_or_throw(
            [&](double g) { return pdf_snr_bob(g, p, d); }, edges[std::size_t(j)], edges[std::size_t(j + 1)]);
        tail -= prob[std::size_t(j)];
    }
    prob[bins - 1] = tail;

    std::vector<int> counts(bins, 0);
    for (int i = 0; i < n; ++i) {
        RandomStream s(RngSpec{404, 1}, std::uint64_t(i));
        const double gamma = snr_bob(s.exponential(p.gbar_ab), p, d);
        int j = int(std::upper_bound(edges.begin() + 1, edges.end(), gamma) - (edges.begin() + 1));
        if (j >= bins) j = bins - 1;
        ++counts[std::size_t(j)];
    }
    double chi2 = 0.0;
    for (int j = 0; j < bins; ++j) {
        const double expect = n * prob[std::size_t(j)];
        chi2 += (counts[std::size_t(j)] - expect) * (counts[std::size_t(j)] - expect) / expect;
    }
    CHECK(chi2 < chi2_crit_1pct(bins - 1));
}

TEST_CASE("pdf_snr_eve: support, normalization, chi-square") {
    const SystemParams p = fig_params();
    const TxDesign d{0.7, 2.0, 1.0};
    const double ceiling = eve_snr_ceiling(d);

    CHECK(pdf_snr_eve(ceiling, p, d) == 0.0);
    CHECK(pdf_snr_eve(ceiling * 1.5, p, d) == 0.0);
    CHECK(pdf_snr_eve(-0.1, p, d) == 0.0);

    const QuadResult q = integrate_adaptive([&](double g) { return pdf_snr_eve(g, p, d); },
                                            0.0, ceiling);
    REQUIRE(q.converged);
    CHECK(q.value == doctest::Approx(1.0).epsilon(1e-6));

    // alpha = 1: support is the whole half-line
    const TxDesign full{1.0, 2.0, 1.0};
    const QuadResult q1 = integrate_to_infinity([&](double g) { return pdf_snr_eve(g, p, full); }, 0.0);
    REQUIRE(q1.converged);
    CHECK(q1.value == doctest::Approx(1.0).epsilon(1e-6));

    // chi-square of Monte Carlo SINR draws against the density
    const int n = 1'000'000;
    const int bins = 40;
    std::vector<double> edges(bins + 1);
    edges[0] = 0.0;
    for (int j = 1; j < bins; ++j) {
        const double g_q = -p.gbar_ae * std::log1p(-double(j) / bins);
        edges[std::size_t(j)] = snr_eve(g_q, p, d);
    }
    edges[bins] = ceiling;
    std::vector<double> prob(bins);
    double tail = 1.0;
    for (int j = 0; j + 1 < bins; ++j) {
        prob[std::size_t(j)] = integrate_or_throw(
            [&](double g) { return pdf_snr_eve(g, p, d); }, edges[std::size_t(j)], edges[std::size_t(j + 1)]);
        tail -= prob[std::size_t(j)];
    }
    prob[bins - 1] = tail;
    std::vector<int> counts(bins, 0);
    for (int i = 0; i < n; ++i) {
        RandomStream s(RngSpec{405, 1}, std::uint64_t(i));
        const double gamma = snr_eve(s.exponential(p.gbar_ae), p, d);
        int j = int(std::upper_bound(edges.begin() + 1, edges.end() - 1, gamma) - (edges.begin() + 1));
        if (j >= bins) j = bins - 1;
        ++counts[std::size_t(j)];
    }
    double chi2 = 0.0;
    for (int j = 0; j < bins; ++j) {
        const double expect = n * prob[std::size_t(j)];
        chi2 += (counts[std::size_t(j)] - expect) * (counts[std::size_t(j)] - expect) / expect;
    }
    CHECK(chi2 < chi2_crit_1pct(bins - 1));
}

TEST_CASE("secrecy outage point values") {
    SystemParams p = fig_params();
    CHECK(secrecy_outage(p, TxDesign{0.5, 2.0, 1.0}) == 0.0);
    CHECK(secrecy_outage(p, TxDesign{1.0, 2.0, 1.0})
          == doctest::Approx(std::exp(-0.01)).epsilon(1e-14));  // 0.990050
    CHECK(secrecy_outage(p, TxDesign{0.7, 2.0, 1.0})
          == doctest::Approx(std::exp(-0.025)).epsilon(1e-14));  // 0.975310
}

TEST_CASE("perfect-secrecy boundary is exact, inclusive, and sharp") {
    RandomStream r(RngSpec{560, 1}, 0);
    for (int trial = 0; trial < 100; ++trial) {
        SystemParams p = random_params(r);
        if (trial % 3 == 0) p.sigma2_e = 0.0;  // noiseless Eve included
        TxDesign d = random_design(r);
        d.r_s = std::min(d.r_s, d.r_b * 0.9);
        const double boundary = perfect_secrecy_boundary(d.r_b, d.r_s);
        d.alpha = boundary;
        if (!(d.alpha > 0.0)) continue;
        REQUIRE(secrecy_outage(p, d) == 0.0);
        d.alpha = boundary * 0.7;
        REQUIRE(secrecy_outage(p, d) == 0.0);
        if (p.sigma2_e == 0.0) {
            // any representable step above the boundary flips straight to 1
            d.alpha = std::min(boundary + 1e-12, 1.0);
            REQUIRE(secrecy_outage(p, d) == 1.0);
        } else {
            // far enough above the boundary for the outage to be representable
            // (infinitesimally above it the true value underflows to 0)
            d.alpha = std::min(boundary + 0.02, 1.0);
            REQUIRE(secrecy_outage(p, d) > 0.0);
        }
    }
}

TEST_CASE("connection outage: threshold limit and dual-route agreement") {
    const SystemParams p = fig_params();
    // r_b -> 0+ drives the outage to 0
    CHECK(connection_outage(p, TxDesign{0.7, 1e-9, 1e-9}) < 1e-8);

    RandomStream r(RngSpec{561, 1}, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const SystemParams q = random_params(r, trial % 4 == 0);
        const TxDesign d = random_design(r);
        const double closed = connection_outage(q, d);
        const double quad = connection_outage_quadrature(q, d);
        REQUIRE(std::fabs(closed - quad) < 1e-8);
        REQUIRE(connection_outage_checked(q, d) == closed);
    }
}

TEST_CASE("pdf/closed-CDF consistency by central difference") {
    const SystemParams p = fig_params();
    const TxDesign d{0.7, 2.0, 1.0};
    const double h = 1e-3;
    for (double gamma : {2.0, 10.0, 40.0, 90.0}) {
        const double deriv = (cdf_snr_bob(gamma + h, p, d) - cdf_snr_bob(gamma - h, p, d)) / (2.0 * h);
        const double density = pdf_snr_bob(gamma, p, d);
        REQUIRE(std::fabs(deriv - density) / density < 1e-5);
    }
}

TEST_CASE("throughput values and definitional consistency") {
    SystemParams p = fig_params();
    p.sigma2_a = 0.0;
    const TxDesign d{0.5, 2.0, 1.0};
    CHECK(throughput_asymptotic(p, d) == doctest::Approx(0.5 * std::exp(-0.06)).epsilon(1e-12));
    CHECK(connection_outage_asymptotic(p, d)
          == doctest::Approx(1.0 - std::exp(-0.06)).epsilon(1e-12));  // 0.058235

    // enormous rate: outage ~ 1, throughput ~ 0
    CHECK(throughput(fig_params(), TxDesign{0.7, 40.0, 1.0}) < 1e-9);

    RandomStream r(RngSpec{562, 1}, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams q = random_params(r);
        const TxDesign dd = random_design(r);
        const PerformanceReport rep = analyze(q, dd);
        REQUIRE(std::fabs(rep.eta - 0.5 * (1.0 - rep.p_co) * dd.r_s) <= 1e-12);
    }
}

TEST_CASE("asymptotic route: point value, linearity, agreement with general route") {
    SystemParams p = fig_params();
    p.sigma2_a = 0.0;
    CHECK(connection_outage_asymptotic(p, TxDesign{1.0, 1.0, 1.0})
          == doctest::Approx(1.0 - std::exp(-0.01)).epsilon(1e-12));  // 0.0099502

    const TxDesign d{0.6, 2.0, 1.0};
    CHECK(snr_bob_asymptotic(2.0, p, d) == doctest::Approx(2.0 * snr_bob_asymptotic(1.0, p, d)).epsilon(1e-14));

    RandomStream r(RngSpec{563, 1}, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams q = random_params(r, true);
        const TxDesign dd = random_design(r);
        REQUIRE(std::fabs(connection_outage(q, dd) - connection_outage_asymptotic(q, dd)) < 1e-10);
        const double g = r.exponential(q.gbar_ab);
        REQUIRE(std::fabs(snr_bob(g, q, dd) - snr_bob_asymptotic(g, q, dd))
                <= 1e-10 * std::max(1.0, snr_bob_asymptotic(g, q, dd)));
        REQUIRE(std::fabs(throughput(q, dd) - throughput_asymptotic(q, dd)) < 1e-10);
    }
}

TEST_CASE("monotone secrecy/reliability tradeoff in alpha") {
    const SystemParams p = fig_params();
    const int n = 100;
    double prev_pco = 2.0, prev_pso = -1.0;
    for (int i = 1; i <= n; ++i) {
        const TxDesign d{double(i) / n, 2.0, 1.0};
        const double pco = connection_outage(p, d);
        const double pso = secrecy_outage(p, d);
        REQUIRE(pco <= prev_pco + 1e-14);
        REQUIRE(pso >= prev_pso - 1e-14);
        prev_pco = pco;
        prev_pso = pso;
    }
}

TEST_CASE("input validation on designs and params") {
    const SystemParams p = fig_params();
    CHECK_THROWS_AS(secrecy_outage(p, TxDesign{0.0, 2.0, 1.0}), invalid_parameter);
    CHECK_THROWS_AS(secrecy_outage(p, TxDesign{1.1, 2.0, 1.0}), invalid_parameter);
    CHECK_THROWS_AS(secrecy_outage(p, TxDesign{0.5, 1.0, 2.0}), invalid_parameter);
    CHECK_THROWS_AS(secrecy_outage(p, TxDesign{0.5, 1.0, 0.0}), invalid_parameter);
    SystemParams bad = p;
    bad.sigma2_b = 0.0;
    CHECK_THROWS_AS(connection_outage(bad, TxDesign{0.5, 2.0, 1.0}), invalid_parameter);
}
