#include "ahlink/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ahlink {

PowerDelayProfile PowerDelayProfile::single_tap() {
    PowerDelayProfile p;
    p.taps = {{0, 1.0}};
    return p;
}

PowerDelayProfile PowerDelayProfile::default_urban() {
    // Powers proportional to exp(-delay/2), normalized to unit total.
    PowerDelayProfile p;
    p.taps.clear();
    double total = 0.0;
    for (int d = 0; d < 6; ++d) total += std::exp(-0.5 * d);
    for (int d = 0; d < 6; ++d) p.taps.push_back({d, std::exp(-0.5 * d) / total});
    return p;
}

PowerDelayProfile PowerDelayProfile::with_rician(double k_db) const {
    PowerDelayProfile p = *this;
    p.rician_los = true;
    p.k_factor_db = k_db;
    return p;
}

void PowerDelayProfile::validate(int gi_samples) const {
    if (taps.empty()) throw std::invalid_argument("PDP needs at least one tap");
    double total = 0.0;
    for (const auto& t : taps) {
        if (t.delay_samples < 0 || t.delay_samples >= gi_samples)
            throw std::invalid_argument(
                "tap delay " + std::to_string(t.delay_samples) +
                " outside the " + std::to_string(gi_samples) + "-sample guard interval");
        if (t.mean_power <= 0) throw std::invalid_argument("tap power must be positive");
        total += t.mean_power;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("PDP powers must sum to 1, got " +
                                    std::to_string(total));
}

int PowerDelayProfile::max_delay() const {
    int m = 0;
    for (const auto& t : taps) m = std::max(m, t.delay_samples);
    return m;
}

ChannelDraw draw_channel(const PowerDelayProfile& pdp, std::mt19937_64& rng,
                         int fft_size) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ChannelDraw ch;
    ch.taps.assign(pdp.max_delay() + 1, cplx(0.0, 0.0));
    // K/(K+1) of the total power rides a deterministic delay-0 ray; the
    // diffuse taps keep the profile shape scaled to the remaining 1/(K+1).
    double diffuse_scale = 1.0;
    if (pdp.rician_los) {
        const double k = std::pow(10.0, pdp.k_factor_db / 10.0);
        diffuse_scale = 1.0 / (k + 1.0);
        ch.taps[0] += std::sqrt(k / (k + 1.0));
    }
    for (size_t i = 0; i < pdp.taps.size(); ++i) {
        const auto& t = pdp.taps[i];
        const double s = std::sqrt(t.mean_power * diffuse_scale / 2.0);
        ch.taps[t.delay_samples] += cplx(s * gauss(rng), s * gauss(rng));
    }
    ch.freq_response.resize(fft_size);
    for (int k = 0; k < fft_size; ++k) {
        cplx h(0.0, 0.0);
        for (size_t m = 0; m < ch.taps.size(); ++m) {
            const double ang = -2.0 * std::numbers::pi * k * static_cast<double>(m) /
                               fft_size;
            h += ch.taps[m] * cplx(std::cos(ang), std::sin(ang));
        }
        ch.freq_response[k] = h;
    }
    return ch;
}

cvec channel_apply(const cvec& time_block, const ChannelDraw& channel) {
    cvec out(time_block.size(), cplx(0.0, 0.0));
    for (size_t m = 0; m < channel.taps.size(); ++m) {
        const cplx h = channel.taps[m];
        if (h == cplx(0.0, 0.0)) continue;
        for (size_t n = m; n < time_block.size(); ++n)
            out[n] += h * time_block[n - m];
    }
    return out;
}

void add_awgn(cvec& time_block, double sigma2, std::mt19937_64& rng) {
    if (sigma2 < 0) throw std::invalid_argument("noise variance must be non-negative");
    if (sigma2 == 0) return;
    std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2 / 2.0));
    for (auto& v : time_block) v += cplx(gauss(rng), gauss(rng));
}

} // namespace ahlink
