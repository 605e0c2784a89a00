#include "ahlink/ofdm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ahlink {

void fft_unitary(cvec& x, bool inverse) {
    const size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_unitary: length must be a power of two");

    // Bit-reversal permutation.
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                cplx u = x[i + k];
                cplx v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : x) v *= scale;
}

OfdmModem::OfdmModem(const OfdmNumerology& numerology) : num_(numerology) {
    gi_ = num_.gi_samples();
    if (num_.fft_size != 32 || num_.data_tones != 24 || num_.pilot_tones != 2)
        throw std::invalid_argument("OfdmModem supports the 1 MHz numerology only "
                                    "(32-point, 24 data + 2 pilot tones)");
    // Occupied tones -13..+13 without DC; pilots at +-7.
    for (int k = -13; k <= 13; ++k) {
        if (k == 0) continue;
        int idx = (k + num_.fft_size) % num_.fft_size;
        if (k == 7 || k == -7)
            pilot_tones_.push_back(idx);
        else
            data_tones_.push_back(idx);
    }
}

cvec OfdmModem::modulate(const std::vector<std::uint8_t>& bits, double amplitude) const {
    const int bps = bits_per_symbol();
    if (bits.empty() || bits.size() % bps != 0)
        throw std::invalid_argument("bit count must be a positive multiple of " +
                                    std::to_string(bps));
    const size_t n_sym = bits.size() / bps;
    cvec out;
    out.reserve(n_sym * symbol_samples());
    for (size_t s = 0; s < n_sym; ++s) {
        cvec tones(num_.fft_size, cplx(0.0, 0.0));
        for (int i = 0; i < bps; ++i)
            tones[data_tones_[i]] = cplx(bits[s * bps + i] ? -amplitude : amplitude, 0.0);
        for (int idx : pilot_tones_) tones[idx] = cplx(amplitude, 0.0);
        fft_unitary(tones, true);
        // Cyclic prefix: last gi_ samples repeated up front.
        for (int i = 0; i < gi_; ++i) out.push_back(tones[num_.fft_size - gi_ + i]);
        out.insert(out.end(), tones.begin(), tones.end());
    }
    return out;
}

cvec OfdmModem::to_tones(const cvec& time_block) const {
    const int sym = symbol_samples();
    if (time_block.empty() || time_block.size() % sym != 0)
        throw std::invalid_argument("time block must be a multiple of the symbol length");
    const size_t n_sym = time_block.size() / sym;
    cvec tones;
    tones.reserve(n_sym * num_.fft_size);
    for (size_t s = 0; s < n_sym; ++s) {
        cvec sym_time(time_block.begin() + s * sym + gi_,
                      time_block.begin() + (s + 1) * sym);
        fft_unitary(sym_time, false);
        tones.insert(tones.end(), sym_time.begin(), sym_time.end());
    }
    return tones;
}

std::vector<std::uint8_t> OfdmModem::decide(const cvec& combined_tones) const {
    const size_t n_sym = combined_tones.size() / num_.fft_size;
    std::vector<std::uint8_t> bits;
    bits.reserve(n_sym * bits_per_symbol());
    for (size_t s = 0; s < n_sym; ++s)
        for (int idx : data_tones_)
            bits.push_back(combined_tones[s * num_.fft_size + idx].real() < 0 ? 1 : 0);
    return bits;
}

std::vector<std::uint8_t> OfdmModem::equalize_and_decide(const cvec& time_block,
                                                         const cvec& freq_response) const {
    if (freq_response.size() != static_cast<size_t>(num_.fft_size))
        throw std::invalid_argument("frequency response must have fft_size entries");
    for (int idx : data_tones_)
        if (std::abs(freq_response[idx]) < 1e-12) throw ZeroToneError();
    cvec tones = to_tones(time_block);
    for (size_t i = 0; i < tones.size(); ++i)
        tones[i] /= freq_response[i % num_.fft_size];
    return decide(tones);
}

std::vector<std::uint8_t> OfdmModem::repetition_combine(const cvec& time_block_a,
                                                        const cvec& time_block_b,
                                                        const cvec& freq_response) const {
    if (time_block_a.size() != time_block_b.size())
        throw std::invalid_argument("repetition copies must have equal length");
    if (freq_response.size() != static_cast<size_t>(num_.fft_size))
        throw std::invalid_argument("frequency response must have fft_size entries");
    double min_mag = 1.0;
    for (int idx : data_tones_) min_mag = std::min(min_mag, std::abs(freq_response[idx]));
    if (min_mag < 1e-12) throw ZeroToneError();

    cvec tones_a = to_tones(time_block_a);
    cvec tones_b = to_tones(time_block_b);
    // MRC with one shared draw: sum of H* Y over copies; the |H|^2
    // normalization does not move the decision boundary.
    cvec combined(tones_a.size());
    for (size_t i = 0; i < combined.size(); ++i) {
        const cplx h = freq_response[i % num_.fft_size];
        combined[i] = std::conj(h) * (tones_a[i] + tones_b[i]);
    }
    return decide(combined);
}

} // namespace ahlink
