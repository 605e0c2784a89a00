#ifndef AHLINK_SIM_HPP
#define AHLINK_SIM_HPP

#include "ahlink/channel.hpp"
#include "ahlink/relay.hpp"

namespace ahlink {

/// Physical parameters of one hop as the simulator sees them: per-tone
/// signal amplitude, per-tone noise variance, and the fading profile.
struct HopPhy {
    double amplitude = 1.0;    // sqrt(per-tone received signal power), W^0.5
    double noise_sigma2 = 0.0; // per-tone complex noise variance, W
    PowerDelayProfile pdp = PowerDelayProfile::single_tap();
};

struct TrialResult {
    long long bit_errors = 0;
    long long bits = 0;
    bool discarded = false;
};

/// Deterministic per-trial seed: the same (master, distance, trial) triple
/// always maps to the same stream, independent of worker layout.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t distance_index,
                       std::uint64_t trial_index);

/// One block-fading trial over a single hop: `blocks` 24-bit payloads, one
/// channel draw, MCS 0 or 10 (time repetition with MRC).
TrialResult run_single_hop_trial(const HopPhy& hop, int mcs, int blocks,
                                 const OfdmModem& modem, std::uint64_t seed);

/// One end-to-end trial: hop 1 is hard-decided at the relay, re-modulated,
/// and sent over hop 2; errors are counted against the source bits.
TrialResult run_relay_trial(const HopPhy& hop1, const HopPhy& hop2, int mcs,
                            int blocks, const OfdmModem& modem, std::uint64_t seed);

struct SimConfig {
    OfdmNumerology numerology;
    RelayScenario scenario;     // devices, deployments, fixed AP-hop distance
    int mcs = 10;               // 0 or 10
    PowerDelayProfile ap_hop_pdp = PowerDelayProfile::default_urban().with_rician(9.0);
    PowerDelayProfile st_hop_pdp = PowerDelayProfile::default_urban();
    std::vector<double> distance_grid_m;  // ST-adjacent hop distances, ascending
    double noise_power_dbw = -145.22;     // thermal floor over the occupied band
    long long max_trials = 200000;
    long long min_bit_errors = 100;
    int blocks_per_trial = 8;             // 24-bit payloads per channel draw
    std::uint64_t master_seed = 1;
    int workers = 1;

    void validate() const;
};

struct BerEstimate {
    double distance_m = 0;
    double ber = 0;
    long long bit_errors = 0;
    long long bit_count = 0;
    double ci_halfwidth = 0;  // 95% binomial normal approximation
    long long trials = 0;
    long long discarded_trials = 0;
};

/// Derives per-hop amplitude/noise from the link budget at each distance
/// and runs batched, reproducibly seeded trials until the error floor or
/// the trial cap is reached.
std::vector<BerEstimate> simulate_relay(const SimConfig& cfg);

} // namespace ahlink

#endif
