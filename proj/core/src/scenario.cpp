#include "ahlink/scenario.hpp"

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

double to_double(const std::string& context, const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(context + ": bad number '" + s + "'");
    }
}

PowerDelayProfile parse_pdp(const std::string& spec) {
    PowerDelayProfile pdp;
    pdp.taps.clear();
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("pdp entries must be delay:power, got '" + item + "'");
        pdp.taps.push_back({static_cast<int>(to_double("pdp", trim(item.substr(0, colon)))),
                            to_double("pdp", trim(item.substr(colon + 1)))});
    }
    if (pdp.taps.empty()) throw std::runtime_error("pdp list is empty");
    return pdp;
}

} // namespace

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        std::stringstream ss(spec);
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
            !std::getline(ss, c))
            throw std::runtime_error("grid spec must be start:stop:step");
        const double start = to_double("grid", trim(a));
        const double stop = to_double("grid", trim(b));
        const double step = to_double("grid", trim(c));
        if (!(step > 0) || !(start < stop))
            throw std::runtime_error("grid requires start < stop and step > 0");
        for (double d = start; d <= stop + 1e-9 * step; d += step) out.push_back(d);
    } else {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(to_double("grid", trim(item)));
    }
    if (out.empty()) throw std::runtime_error("grid spec produced no points");
    return out;
}

ScenarioFile ScenarioFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

ScenarioFile ScenarioFile::parse_string(const std::string& text,
                                        const std::string& name) {
    ScenarioFile f;
    f.name_ = name;
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            f.sections_[section];
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError(name, lineno, "expected 'key = value' or '[section]'");
        if (section.empty())
            throw ParseError(name, lineno, "key/value outside any section");
        f.sections_[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return f;
}

bool ScenarioFile::has(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string ScenarioFile::get(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end() || !s->second.count(key))
        throw std::runtime_error(name_ + ": missing [" + section + "] " + key);
    return s->second.at(key);
}

std::string ScenarioFile::get_or(const std::string& section, const std::string& key,
                                 const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double ScenarioFile::get_double(const std::string& section, const std::string& key) const {
    return to_double(name_ + ": [" + section + "] " + key, get(section, key));
}

double ScenarioFile::get_double_or(const std::string& section, const std::string& key,
                                   double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

RelayScenario ScenarioFile::relay_scenario() const {
    const std::string dir_s = get_or("scenario", "direction", "dl");
    Direction dir;
    if (dir_s == "dl") dir = Direction::Downlink;
    else if (dir_s == "ul") dir = Direction::Uplink;
    else throw std::runtime_error(name_ + ": direction must be dl or ul");

    auto s = RelayScenario::make(
        dir, DeploymentModel::from_string(get_or("scenario", "st_deployment", "macro")),
        get_double_or("scenario", "ap_hop_distance_m", 400.0),
        get_double_or("scenario", "p_out_total", 0.1),
        static_cast<int>(get_double_or("scenario", "mcs", 10)),
        get_double_or("scenario", "rician_k_db", 9.0),
        get_double_or("devices", "ap_tx_dbm", 10.0));

    // Unequal outage splitting is available but defaults to 50/50.
    const double share = get_double_or("scenario", "outage_split", 0.5);
    auto [p1, p2] = split_outage(s.p_out_total, share);
    if (dir == Direction::Downlink) {
        s.ap_hop.p_out = p1;
        s.st_hop.p_out = p2;
    } else {
        s.st_hop.p_out = p1;
        s.ap_hop.p_out = p2;
    }

    auto override_device = [&](DeviceProfile& dev, const std::string& prefix) {
        dev.tx_power_dbm = get_double_or("devices", prefix + "_tx_dbm", dev.tx_power_dbm);
        dev.antenna_gain_dbi =
            get_double_or("devices", prefix + "_gain_dbi", dev.antenna_gain_dbi);
        dev.noise_figure_db =
            get_double_or("devices", prefix + "_nf_db", dev.noise_figure_db);
    };
    auto apply = [&](DeviceProfile& dev) {
        switch (dev.role) {
            case DeviceProfile::Role::Ap: override_device(dev, "ap"); break;
            case DeviceProfile::Role::Rs: override_device(dev, "rs"); break;
            case DeviceProfile::Role::St: override_device(dev, "st"); break;
        }
    };
    apply(s.ap_hop.tx);
    apply(s.ap_hop.rx);
    apply(s.st_hop.tx);
    apply(s.st_hop.rx);
    return s;
}

RateQuery ScenarioFile::rate_query() const {
    RateQuery q;
    q.packet_length_bits =
        static_cast<long>(get_double_or("rate", "packet_bits", 32768));
    q.target_per = get_double_or("rate", "per_target", 0.1);
    q.coding_gain_db = get_double_or("rate", "coding_gain_db", 0.0);
    return q;
}

SimConfig ScenarioFile::sim_config(const OfdmNumerology& numerology) const {
    SimConfig cfg;
    cfg.numerology = numerology;
    cfg.scenario = relay_scenario();
    cfg.mcs = static_cast<int>(get_double_or("sim", "mcs", cfg.scenario.mcs));
    cfg.max_trials = static_cast<long long>(get_double_or("sim", "trials", 200000));
    cfg.min_bit_errors = static_cast<long long>(get_double_or("sim", "min_errors", 100));
    cfg.blocks_per_trial =
        static_cast<int>(get_double_or("sim", "blocks_per_trial", 8));
    cfg.master_seed = static_cast<std::uint64_t>(get_double_or("sim", "seed", 1));
    cfg.workers = static_cast<int>(get_double_or("sim", "workers", 1));
    cfg.noise_power_dbw = get_double_or("sim", "noise_dbw", -145.22);
    if (has("sim", "distances_m"))
        cfg.distance_grid_m = parse_grid(get("sim", "distances_m"));
    const double k = get_double_or("scenario", "rician_k_db", 9.0);
    if (has("sim", "pdp")) {
        const auto pdp = parse_pdp(get("sim", "pdp"));
        cfg.st_hop_pdp = pdp;
        cfg.ap_hop_pdp = pdp.with_rician(k);
    } else {
        cfg.st_hop_pdp = PowerDelayProfile::default_urban();
        cfg.ap_hop_pdp = PowerDelayProfile::default_urban().with_rician(k);
    }
    return cfg;
}

} // namespace ahlink
