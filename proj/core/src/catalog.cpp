#include "ahlink/catalog.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ahlink {
namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (ss >> item) out.push_back(item);
    return out;
}

double parse_double(const std::string& file, int line, const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(file, line, "bad number '" + s + "'");
    }
}

// Formats a double so that reparsing reproduces the exact same value.
std::string fmt_double(double v) {
    for (int prec = 1; prec <= 17; ++prec) {
        std::ostringstream os;
        os.precision(prec);
        os << v;
        if (std::stod(os.str()) == v) return os.str();
    }
    return std::to_string(v);
}

} // namespace

std::string to_string(Modulation m) {
    switch (m) {
        case Modulation::Bpsk: return "BPSK";
        case Modulation::Qpsk: return "QPSK";
        case Modulation::Qam16: return "16QAM";
        case Modulation::Qam64: return "64QAM";
        case Modulation::Qam256: return "256QAM";
    }
    return "?";
}

Modulation modulation_from_string(const std::string& s) {
    if (s == "BPSK") return Modulation::Bpsk;
    if (s == "QPSK") return Modulation::Qpsk;
    if (s == "16QAM") return Modulation::Qam16;
    if (s == "64QAM") return Modulation::Qam64;
    if (s == "256QAM") return Modulation::Qam256;
    throw std::invalid_argument("unknown modulation '" + s + "'");
}

double McsProfile::rate_mbps(int bandwidth_mhz) const {
    auto it = rates_mbps.find(bandwidth_mhz);
    if (it == rates_mbps.end())
        throw NotDefinedError("rate not defined for MCS" + std::to_string(id) +
                              " at " + std::to_string(bandwidth_mhz) + " MHz");
    return it->second;
}

double McsProfile::mds(int bandwidth_mhz) const {
    auto it = mds_dbm.find(bandwidth_mhz);
    if (it == mds_dbm.end())
        throw NotDefinedError("MDS not defined for MCS" + std::to_string(id) +
                              " at " + std::to_string(bandwidth_mhz) + " MHz");
    return it->second;
}

double RegulatoryDomain::max_erp_mw() const {
    double m = 0;
    for (double e : erp_limits_mw) m = std::max(m, e);
    return m;
}

double RegulatoryDomain::max_erp_dbm() const {
    return 10.0 * std::log10(max_erp_mw());
}

int OfdmNumerology::gi_samples() const {
    return static_cast<int>(std::lround(gi_us * 1e-6 * bandwidth_hz()));
}

std::string Catalog::default_path() {
    if (const char* env = std::getenv("AHLINK_CATALOG")) return env;
#ifdef AHLINK_DEFAULT_CATALOG
    return AHLINK_DEFAULT_CATALOG;
#else
    return "catalog_80211ah.txt";
#endif
}

Catalog Catalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog file '" + path + "'");

    Catalog cat;
    static const int kBandwidths[3] = {1, 2, 16};
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = t.substr(1, t.size() - 2);
            continue;
        }
        if (section == "mcs") {
            auto f = split_ws(t);
            if (f.size() != 10) throw ParseError(path, lineno, "expected 10 MCS columns");
            McsProfile p;
            p.id = static_cast<int>(parse_double(path, lineno, f[0]));
            p.modulation = modulation_from_string(f[1]);
            auto cr = split(f[2], '/');
            if (cr.size() != 2) throw ParseError(path, lineno, "bad code rate '" + f[2] + "'");
            p.code_rate = {static_cast<int>(parse_double(path, lineno, cr[0])),
                           static_cast<int>(parse_double(path, lineno, cr[1]))};
            p.repetition = static_cast<int>(parse_double(path, lineno, f[3]));
            for (int i = 0; i < 3; ++i) {
                if (f[4 + i] != "-")
                    p.rates_mbps[kBandwidths[i]] = parse_double(path, lineno, f[4 + i]);
                if (f[7 + i] != "-")
                    p.mds_dbm[kBandwidths[i]] = parse_double(path, lineno, f[7 + i]);
            }
            cat.mcs_.push_back(std::move(p));
        } else if (section == "regulatory") {
            auto f = split(t, '|');
            if (f.size() != 4) throw ParseError(path, lineno, "expected 4 regulatory columns");
            RegulatoryDomain d;
            d.region = f[0];
            for (const auto& b : split(f[1], ',')) {
                auto lo_hi = split(b, '-');
                if (lo_hi.size() != 2) throw ParseError(path, lineno, "bad band '" + b + "'");
                d.bands.push_back({parse_double(path, lineno, lo_hi[0]),
                                   parse_double(path, lineno, lo_hi[1])});
            }
            for (const auto& e : split(f[2], ','))
                d.erp_limits_mw.push_back(parse_double(path, lineno, e));
            for (const auto& b : split(f[3], ','))
                d.bandwidths_mhz.push_back(static_cast<int>(parse_double(path, lineno, b)));
            cat.regulatory_.push_back(std::move(d));
        } else if (section == "ofdm") {
            auto kv = split(t, '=');
            if (kv.size() != 2) throw ParseError(path, lineno, "expected key = value");
            double v = parse_double(path, lineno, kv[1]);
            auto& n = cat.numerology_;
            if (kv[0] == "tone_spacing_khz") n.tone_spacing_hz = v * 1e3;
            else if (kv[0] == "fft_size") n.fft_size = static_cast<int>(v);
            else if (kv[0] == "data_tones") n.data_tones = static_cast<int>(v);
            else if (kv[0] == "pilot_tones") n.pilot_tones = static_cast<int>(v);
            else if (kv[0] == "gi_us") n.gi_us = v;
            else if (kv[0] == "symbol_us") n.symbol_us = v;
            else throw ParseError(path, lineno, "unknown ofdm key '" + kv[0] + "'");
        } else {
            throw ParseError(path, lineno, "content outside a known section");
        }
    }
    cat.validate();
    return cat;
}

void Catalog::validate() const {
    for (const auto& p : mcs_) {
        if ((p.repetition == 2) != (p.id == 10))
            throw std::runtime_error("catalog: repetition=2 is reserved for MCS10");
        for (const auto& [bw, mds] : p.mds_dbm)
            if (mds >= 0)
                throw std::runtime_error("catalog: MDS must be negative dBm (MCS" +
                                         std::to_string(p.id) + ")");
    }
    for (const auto& d : regulatory_) {
        if (d.erp_limits_mw.empty())
            throw std::runtime_error("catalog: region '" + d.region + "' has no ERP limits");
        for (const auto& b : d.bands)
            if (b.low_mhz < 614 || b.high_mhz > 960 || b.low_mhz >= b.high_mhz)
                throw std::runtime_error("catalog: band outside 614-960 MHz in '" +
                                         d.region + "'");
    }
}

const McsProfile& Catalog::mcs(int id) const {
    for (const auto& p : mcs_)
        if (p.id == id) return p;
    throw std::out_of_range("unknown MCS index " + std::to_string(id) +
                            " (valid: 0-10)");
}

const RegulatoryDomain& Catalog::regulatory(const std::string& region) const {
    for (const auto& d : regulatory_)
        if (d.region == region) return d;
    std::string known;
    for (const auto& d : regulatory_)
        known += (known.empty() ? "" : ", ") + d.region;
    throw std::out_of_range("unknown region '" + region + "' (known: " + known + ")");
}

void Catalog::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write catalog file '" + path + "'");
    static const int kBandwidths[3] = {1, 2, 16};
    out << "[mcs]\n";
    for (const auto& p : mcs_) {
        out << p.id << " " << to_string(p.modulation) << " "
            << p.code_rate.num << "/" << p.code_rate.den << " " << p.repetition;
        for (int bw : kBandwidths) {
            auto it = p.rates_mbps.find(bw);
            out << " " << (it == p.rates_mbps.end() ? "-" : fmt_double(it->second));
        }
        for (int bw : kBandwidths) {
            auto it = p.mds_dbm.find(bw);
            out << " " << (it == p.mds_dbm.end() ? "-" : fmt_double(it->second));
        }
        out << "\n";
    }
    out << "\n[regulatory]\n";
    for (const auto& d : regulatory_) {
        out << d.region << " | ";
        for (size_t i = 0; i < d.bands.size(); ++i)
            out << (i ? "," : "") << fmt_double(d.bands[i].low_mhz) << "-"
                << fmt_double(d.bands[i].high_mhz);
        out << " | ";
        for (size_t i = 0; i < d.erp_limits_mw.size(); ++i)
            out << (i ? "," : "") << fmt_double(d.erp_limits_mw[i]);
        out << " | ";
        for (size_t i = 0; i < d.bandwidths_mhz.size(); ++i)
            out << (i ? "," : "") << d.bandwidths_mhz[i];
        out << "\n";
    }
    out << "\n[ofdm]\n";
    out << "tone_spacing_khz = " << fmt_double(numerology_.tone_spacing_hz / 1e3) << "\n";
    out << "fft_size = " << numerology_.fft_size << "\n";
    out << "data_tones = " << numerology_.data_tones << "\n";
    out << "pilot_tones = " << numerology_.pilot_tones << "\n";
    out << "gi_us = " << fmt_double(numerology_.gi_us) << "\n";
    out << "symbol_us = " << fmt_double(numerology_.symbol_us) << "\n";
}

} // namespace ahlink
