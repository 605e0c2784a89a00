#include <benchmark/benchmark.h>

#include "ahlink/fading.hpp"
#include "ahlink/relay.hpp"
#include "ahlink/sim.hpp"

using namespace ahlink;

static void BM_RicianFadeMargin(benchmark::State& state) {
    double p = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rician_fade_margin(9.0, p));
        p = p < 0.4 ? p + 0.01 : 0.05;
    }
}
BENCHMARK(BM_RicianFadeMargin);

static void BM_RelayRateSweep(benchmark::State& state) {
    const auto s = RelayScenario::make(Direction::Downlink, DeploymentModel::macro(),
                                       850.0, 0.1, 0);
    RateQuery q;
    q.packet_length_bits = 2048;
    std::vector<double> grid;
    for (double d = 50.0; d <= 800.0; d += 10.0) grid.push_back(d);
    for (auto _ : state) benchmark::DoNotOptimize(relay_rate_sweep(s, q, grid));
}
BENCHMARK(BM_RelayRateSweep);

static void BM_SingleHopTrial(benchmark::State& state) {
    const OfdmModem modem{OfdmNumerology{}};
    HopPhy hop;
    hop.amplitude = 1.0;
    hop.noise_sigma2 = 0.05;
    hop.pdp = PowerDelayProfile::default_urban();
    std::uint64_t t = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            run_single_hop_trial(hop, static_cast<int>(state.range(0)), 8, modem,
                                 mix_seed(1, 0, t++)));
}
BENCHMARK(BM_SingleHopTrial)->Arg(0)->Arg(10);

static void BM_RelayTrial(benchmark::State& state) {
    const OfdmModem modem{OfdmNumerology{}};
    HopPhy hop;
    hop.amplitude = 1.0;
    hop.noise_sigma2 = 0.05;
    hop.pdp = PowerDelayProfile::default_urban().with_rician(9.0);
    std::uint64_t t = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_relay_trial(hop, hop, 10, 8, modem,
                                                 mix_seed(2, 0, t++)));
}
BENCHMARK(BM_RelayTrial);

BENCHMARK_MAIN();
