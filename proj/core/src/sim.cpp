#include "ahlink/sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace ahlink {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, int count) {
    std::vector<std::uint8_t> bits(count);
    for (auto& b : bits) b = static_cast<std::uint8_t>((rng() >> 33) & 1u);
    return bits;
}

/// Transmit `bits` over one hop and hard-decide them at the receiver.
std::vector<std::uint8_t> transmit_hop(const std::vector<std::uint8_t>& bits,
                                       const HopPhy& hop, int mcs,
                                       const OfdmModem& modem, std::mt19937_64& rng) {
    const ChannelDraw ch = draw_channel(hop.pdp, rng, modem.numerology().fft_size);
    const cvec tx = modem.modulate(bits, hop.amplitude);
    if (mcs == 10) {
        // Same symbols in two consecutive intervals over one channel draw.
        cvec rx_a = channel_apply(tx, ch);
        cvec rx_b = channel_apply(tx, ch);
        add_awgn(rx_a, hop.noise_sigma2, rng);
        add_awgn(rx_b, hop.noise_sigma2, rng);
        return modem.repetition_combine(rx_a, rx_b, ch.freq_response);
    }
    cvec rx = channel_apply(tx, ch);
    add_awgn(rx, hop.noise_sigma2, rng);
    return modem.equalize_and_decide(rx, ch.freq_response);
}

long long count_errors(const std::vector<std::uint8_t>& a,
                       const std::vector<std::uint8_t>& b) {
    long long e = 0;
    for (size_t i = 0; i < a.size(); ++i) e += (a[i] != b[i]);
    return e;
}

} // namespace

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t distance_index,
                       std::uint64_t trial_index) {
    return splitmix64(splitmix64(splitmix64(master) ^ distance_index) ^ trial_index);
}

TrialResult run_single_hop_trial(const HopPhy& hop, int mcs, int blocks,
                                 const OfdmModem& modem, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto bits = random_bits(rng, blocks * modem.bits_per_symbol());
    TrialResult r;
    try {
        const auto decided = transmit_hop(bits, hop, mcs, modem, rng);
        r.bit_errors = count_errors(bits, decided);
        r.bits = static_cast<long long>(bits.size());
    } catch (const ZeroToneError&) {
        r.discarded = true;
    }
    return r;
}

TrialResult run_relay_trial(const HopPhy& hop1, const HopPhy& hop2, int mcs,
                            int blocks, const OfdmModem& modem, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto bits = random_bits(rng, blocks * modem.bits_per_symbol());
    TrialResult r;
    try {
        // Regenerative relay: hard bits, fresh modulation on hop 2.
        const auto relay_bits = transmit_hop(bits, hop1, mcs, modem, rng);
        const auto decided = transmit_hop(relay_bits, hop2, mcs, modem, rng);
        r.bit_errors = count_errors(bits, decided);
        r.bits = static_cast<long long>(bits.size());
    } catch (const ZeroToneError&) {
        r.discarded = true;
    }
    return r;
}

void SimConfig::validate() const {
    if (mcs != 0 && mcs != 10)
        throw std::invalid_argument("simulator supports MCS 0 and MCS 10 only");
    if (max_trials < 1) throw std::invalid_argument("trial cap must be at least 1");
    if (blocks_per_trial < 1) throw std::invalid_argument("blocks_per_trial must be >= 1");
    if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
    if (distance_grid_m.empty())
        throw std::invalid_argument("distance grid is empty");
    if (!std::is_sorted(distance_grid_m.begin(), distance_grid_m.end()))
        throw std::invalid_argument("distance grid must be sorted ascending");
    const int gi = numerology.gi_samples();
    ap_hop_pdp.validate(gi);
    st_hop_pdp.validate(gi);
}

std::vector<BerEstimate> simulate_relay(const SimConfig& cfg) {
    cfg.validate();
    const OfdmModem modem(cfg.numerology);

    const auto hop_phy = [&](const LinkSpec& link, const PowerDelayProfile& pdp,
                             double distance_m) {
        const double p_rx_dbm = received_power(link.tx, link.rx, link.deployment,
                                               distance_m, 0.0);
        const double p_rx_w = std::pow(10.0, (p_rx_dbm - 30.0) / 10.0);
        const double noise_w = std::pow(10.0, (cfg.noise_power_dbw +
                                               link.rx.noise_figure_db) / 10.0);
        HopPhy h;
        h.amplitude = std::sqrt(p_rx_w / cfg.numerology.data_tones);
        h.noise_sigma2 = noise_w / cfg.numerology.data_tones;
        h.pdp = pdp;
        return h;
    };

    std::vector<BerEstimate> out;
    out.reserve(cfg.distance_grid_m.size());
    for (size_t di = 0; di < cfg.distance_grid_m.size(); ++di) {
        const double d = cfg.distance_grid_m[di];
        // The swept distance belongs to the ST-adjacent hop; transmission
        // order depends on direction.
        const HopPhy ap_phy = hop_phy(cfg.scenario.ap_hop, cfg.ap_hop_pdp,
                                      cfg.scenario.ap_hop_distance_m);
        const HopPhy st_phy = hop_phy(cfg.scenario.st_hop, cfg.st_hop_pdp, d);
        const HopPhy& hop1 = (cfg.scenario.direction == Direction::Downlink) ? ap_phy
                                                                             : st_phy;
        const HopPhy& hop2 = (cfg.scenario.direction == Direction::Downlink) ? st_phy
                                                                             : ap_phy;

        BerEstimate est;
        est.distance_m = d;
        const long long batch = std::min<long long>(2048, cfg.max_trials);
        while (est.trials < cfg.max_trials) {
            const long long n = std::min(batch, cfg.max_trials - est.trials);
            const long long base = est.trials;

            struct Tally {
                long long bit_errors = 0;
                long long bits = 0;
                long long discarded = 0;
            };
            auto worker = [&](int w, Tally* tally) {
                for (long long t = w; t < n; t += cfg.workers) {
                    const auto r = run_relay_trial(
                        hop1, hop2, cfg.mcs, cfg.blocks_per_trial, modem,
                        mix_seed(cfg.master_seed, di, static_cast<std::uint64_t>(base + t)));
                    tally->bit_errors += r.bit_errors;
                    tally->bits += r.bits;
                    tally->discarded += r.discarded ? 1 : 0;
                }
            };
            std::vector<Tally> tallies(cfg.workers);
            if (cfg.workers == 1) {
                worker(0, &tallies[0]);
            } else {
                std::vector<std::thread> threads;
                threads.reserve(cfg.workers);
                for (int w = 0; w < cfg.workers; ++w)
                    threads.emplace_back(worker, w, &tallies[w]);
                for (auto& th : threads) th.join();
            }
            for (const auto& t : tallies) {
                est.bit_errors += t.bit_errors;
                est.bit_count += t.bits;
                est.discarded_trials += t.discarded;
            }
            est.trials += n;
            if (est.bit_errors >= cfg.min_bit_errors) break;
        }
        if (est.bit_count > 0) {
            est.ber = static_cast<double>(est.bit_errors) / est.bit_count;
            est.ci_halfwidth = 1.96 * std::sqrt(est.ber * (1.0 - est.ber) / est.bit_count);
        }
        out.push_back(est);
    }
    return out;
}

} // namespace ahlink
