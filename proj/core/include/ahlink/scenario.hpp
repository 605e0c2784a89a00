#ifndef AHLINK_SCENARIO_HPP
#define AHLINK_SCENARIO_HPP

#include <map>
#include <string>

#include "ahlink/sim.hpp"

namespace ahlink {

/// A parsed scenario file: key/value sections describing the relay layout,
/// device overrides, the rate query, and the simulator block.
///
///   [scenario]  direction, st_deployment, ap_hop_distance_m, p_out_total,
///               mcs, rician_k_db, outage_split
///   [devices]   {ap,rs,st}_{tx_dbm,gain_dbi,nf_db}
///   [rate]      packet_bits, per_target, coding_gain_db
///   [sim]       trials, min_errors, seed, blocks_per_trial, workers,
///               distances_m (start:stop:step or comma list),
///               pdp (delay:power,...), mcs, noise_dbw
class ScenarioFile {
public:
    static ScenarioFile parse_file(const std::string& path);
    static ScenarioFile parse_string(const std::string& text,
                                     const std::string& name = "<string>");

    RelayScenario relay_scenario() const;
    RateQuery rate_query() const;
    SimConfig sim_config(const OfdmNumerology& numerology) const;

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;

private:
    std::string name_;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// "start:stop:step" or "a,b,c" into a distance list.
std::vector<double> parse_grid(const std::string& spec);

} // namespace ahlink

#endif
