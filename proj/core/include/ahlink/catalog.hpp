#ifndef AHLINK_CATALOG_HPP
#define AHLINK_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ahlink/errors.hpp"

namespace ahlink {

enum class Modulation { Bpsk, Qpsk, Qam16, Qam64, Qam256 };

std::string to_string(Modulation m);
Modulation modulation_from_string(const std::string& s);

struct CodeRate {
    int num = 1;
    int den = 2;
    double value() const { return static_cast<double>(num) / den; }
};

/// One row of the MCS table. Rates and sensitivities are keyed by channel
/// bandwidth in MHz; entries absent from the standard are simply missing.
struct McsProfile {
    int id = 0;
    Modulation modulation = Modulation::Bpsk;
    CodeRate code_rate;
    int repetition = 1;
    std::map<int, double> rates_mbps;  // bandwidth MHz -> Mb/s
    std::map<int, double> mds_dbm;     // bandwidth MHz -> dBm

    double rate_mbps(int bandwidth_mhz) const;
    double mds(int bandwidth_mhz) const;
};

struct FrequencyBand {
    double low_mhz = 0;
    double high_mhz = 0;
};

struct RegulatoryDomain {
    std::string region;
    std::vector<FrequencyBand> bands;
    std::vector<double> erp_limits_mw;
    std::vector<int> bandwidths_mhz;

    double max_erp_mw() const;
    double max_erp_dbm() const;
};

/// 1 MHz numerology: 32-point transform, 24 data + 2 pilot tones, 8 us GI.
struct OfdmNumerology {
    double tone_spacing_hz = 31250.0;
    int fft_size = 32;
    int data_tones = 24;
    int pilot_tones = 2;
    double gi_us = 8.0;
    double symbol_us = 40.0;

    double bandwidth_hz() const { return tone_spacing_hz * fft_size; }
    int gi_samples() const;
    int occupied_tones() const { return data_tones + pilot_tones; }
};

/// The standard's static data, loaded from a versioned text file.
/// Immutable after load; safe for concurrent readers.
class Catalog {
public:
    static Catalog load(const std::string& path);

    /// Resolution order: explicit argument, AHLINK_CATALOG env var,
    /// compiled-in default location.
    static std::string default_path();

    const McsProfile& mcs(int id) const;
    const RegulatoryDomain& regulatory(const std::string& region) const;
    const OfdmNumerology& numerology() const { return numerology_; }

    const std::vector<McsProfile>& all_mcs() const { return mcs_; }
    const std::vector<RegulatoryDomain>& all_regulatory() const { return regulatory_; }

    void save(const std::string& path) const;

private:
    void validate() const;

    std::vector<McsProfile> mcs_;
    std::vector<RegulatoryDomain> regulatory_;
    OfdmNumerology numerology_;
};

} // namespace ahlink

#endif
