#ifndef AHLINK_CHANNEL_HPP
#define AHLINK_CHANNEL_HPP

#include <random>

#include "ahlink/ofdm.hpp"

namespace ahlink {

/// Tapped delay line at the 1 Msample/s baseband rate. Mean tap powers are
/// normalized to 1 so the large-scale budget stays in the amplitude scale.
struct PowerDelayProfile {
    struct Tap {
        int delay_samples = 0;
        double mean_power = 1.0;
    };
    std::vector<Tap> taps{{0, 1.0}};
    bool rician_los = false;   // deterministic LOS component on tap 0
    double k_factor_db = 9.0;

    static PowerDelayProfile single_tap();
    /// Six-tap exponential-decay urban-style profile, delays 0..5 samples,
    /// all inside the 8-sample guard interval.
    static PowerDelayProfile default_urban();

    PowerDelayProfile with_rician(double k_db) const;
    void validate(int gi_samples) const;
    int max_delay() const;
};

/// One block-fading realization: dense tap gains plus the exact per-tone
/// response the perfect-CSI equalizer uses.
struct ChannelDraw {
    cvec taps;            // indexed by delay
    cvec freq_response;   // length fft_size, H[k] = sum_m h[m] e^{-j2pi km/N}
};

ChannelDraw draw_channel(const PowerDelayProfile& pdp, std::mt19937_64& rng,
                         int fft_size);

/// Linear convolution with the drawn taps over the whole block (prefix
/// included); with all delays inside the prefix this is circular over the
/// useful part of each symbol.
cvec channel_apply(const cvec& time_block, const ChannelDraw& channel);

/// Adds complex AWGN of per-sample variance `sigma2` (unitary transforms
/// keep the same per-tone variance).
void add_awgn(cvec& time_block, double sigma2, std::mt19937_64& rng);

} // namespace ahlink

#endif
