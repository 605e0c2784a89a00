#ifndef AHLINK_OFDM_HPP
#define AHLINK_OFDM_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "ahlink/catalog.hpp"

namespace ahlink {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// A per-tone frequency response passed a magnitude-zero tone; the trial
/// using it must be discarded (and counted).
class ZeroToneError : public NumericError {
public:
    ZeroToneError() : NumericError("channel frequency response has a zero tone") {}
};

/// In-place radix-2 FFT with unitary 1/sqrt(N) scaling both ways, so
/// modulate/demodulate round-trips and Parseval hold exactly.
void fft_unitary(cvec& x, bool inverse);

/// BPSK OFDM modem for the 1 MHz numerology: 32-point transform, 24 data
/// tones, 2 fixed pilots, 8-sample cyclic prefix.
class OfdmModem {
public:
    explicit OfdmModem(const OfdmNumerology& numerology);

    const OfdmNumerology& numerology() const { return num_; }
    int symbol_samples() const { return num_.fft_size + gi_; }
    int bits_per_symbol() const { return num_.data_tones; }

    /// Maps `bits` (a multiple of 24) onto +-amplitude data tones, +amplitude
    /// pilots, zero elsewhere; prepends the cyclic prefix per symbol.
    cvec modulate(const std::vector<std::uint8_t>& bits, double amplitude = 1.0) const;

    /// Strips the prefix and returns the unitary FFT of each symbol's
    /// useful part, concatenated (fft_size tones per symbol).
    cvec to_tones(const cvec& time_block) const;

    /// Per-tone zero-forcing against the known response, then a hard BPSK
    /// decision on the real part of the data tones.
    std::vector<std::uint8_t> equalize_and_decide(const cvec& time_block,
                                                  const cvec& freq_response) const;

    /// Maximal-ratio combination of two received copies of the same symbols
    /// over one shared channel draw, weighted by |H|^2 per tone.
    std::vector<std::uint8_t> repetition_combine(const cvec& time_block_a,
                                                 const cvec& time_block_b,
                                                 const cvec& freq_response) const;

    const std::vector<int>& data_tone_indices() const { return data_tones_; }
    const std::vector<int>& pilot_tone_indices() const { return pilot_tones_; }

private:
    std::vector<std::uint8_t> decide(const cvec& combined_tones) const;

    OfdmNumerology num_;
    int gi_ = 8;
    std::vector<int> data_tones_;
    std::vector<int> pilot_tones_;
};

} // namespace ahlink

#endif
