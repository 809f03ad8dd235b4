// Timing comparison of the OpenMP kernels against their serial references.
// The two must agree bit-for-bit; this target reports the speedup.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ansec/optimize.hpp"
#include "ansec/simulate.hpp"

namespace {

double seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run the same serial code\n");
#endif

    ansec::SystemParams params;
    params.p_a = 10.0;
    params.p_b = 10.0;
    params.sigma2_a = 0.1;
    params.sigma2_b = 0.1;
    params.sigma2_e = 0.1;
    const ansec::TxDesign design{0.7, 2.0, 1.0};

    {
        ansec::SimConfig cfg;
        cfg.n_blocks = 10'000'000;
        cfg.rng.seed = 12345;
        ansec::EmpiricalReport par{}, ser{};
        const double t_par = seconds([&] { par = ansec::simulate_outage(params, design, cfg); });
        const double t_ser = seconds([&] { ser = ansec::simulate_outage_serial(params, design, cfg); });
        const bool identical = par.p_so_hat == ser.p_so_hat && par.p_co_hat == ser.p_co_hat;
        std::printf("monte-carlo outage, %llu blocks\n", (unsigned long long)cfg.n_blocks);
        std::printf("  parallel %.3fs (%.1f Mblocks/s)   serial %.3fs (%.1f Mblocks/s)   speedup %.2fx   %s\n",
                    t_par, cfg.n_blocks / t_par / 1e6, t_ser, cfg.n_blocks / t_ser / 1e6,
                    t_ser / t_par, identical ? "bit-identical" : "MISMATCH");
    }

    {
        ansec::SystemParams asym = params;
        asym.sigma2_a = 0.0;
        const ansec::OutageConstraints cons{0.1, 0.1};
        ansec::GridSpec grid;
        grid.coarse_step = 0.005;  // larger pass-1 load for a meaningful timing
        ansec::DesignSolution par, ser;
        const double t_par = seconds([&] { par = ansec::grid_oracle(asym, cons, grid); });
        const double t_ser = seconds([&] { ser = ansec::grid_oracle_serial(asym, cons, grid); });
        const bool identical = par.eta == ser.eta && par.design.r_b == ser.design.r_b
                            && par.design.r_s == ser.design.r_s;
        std::printf("rate grid search, coarse step %.3f\n", grid.coarse_step);
        std::printf("  parallel %.3fs   serial %.3fs   speedup %.2fx   %s\n",
                    t_par, t_ser, t_ser / t_par, identical ? "bit-identical" : "MISMATCH");
        std::printf("  best eta %.6f at (alpha=%.4f, r_b=%.4f, r_s=%.4f)\n",
                    par.eta, par.design.alpha, par.design.r_b, par.design.r_s);
    }

    {
        ansec::SimConfig cfg;
        cfg.n_blocks = 2'000;
        cfg.symbols_per_block = 1'000;
        cfg.rng.seed = 7;
        ansec::SymbolLevelReport par{}, ser{};
        const double t_par = seconds([&] { par = ansec::simulate_symbol_level(params, design, cfg); });
        const double t_ser = seconds([&] { ser = ansec::simulate_symbol_level_serial(params, design, cfg); });
        const bool identical = par.mean_measured_snr_bob == ser.mean_measured_snr_bob;
        std::printf("symbol-level chain, %llu blocks x %llu symbols\n",
                    (unsigned long long)cfg.n_blocks, (unsigned long long)cfg.symbols_per_block);
        std::printf("  parallel %.3fs   serial %.3fs   speedup %.2fx   %s\n",
                    t_par, t_ser, t_ser / t_par, identical ? "bit-identical" : "MISMATCH");
    }

    return 0;
}
