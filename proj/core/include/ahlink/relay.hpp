#ifndef AHLINK_RELAY_HPP
#define AHLINK_RELAY_HPP

#include <utility>
#include <vector>

#include "ahlink/link_rate.hpp"

namespace ahlink {

enum class Direction { Downlink, Uplink };

/// One hop of the relayed link.
struct LinkSpec {
    DeviceProfile tx;
    DeviceProfile rx;
    DeploymentModel deployment;
    FadingModel fading;
    double p_out = 0.05;  // outage allocated to this hop
};

/// Dual-hop decode-and-forward scenario. The AP-adjacent hop sits at a
/// fixed distance and uses macro deployment with Rician fading; the
/// ST-adjacent hop (Rayleigh, macro or pico) is the one swept or solved.
struct RelayScenario {
    Direction direction = Direction::Downlink;
    LinkSpec ap_hop;             // AP<->RS (hop 1 on DL, hop 2 on UL)
    LinkSpec st_hop;             // RS<->ST (hop 2 on DL, hop 1 on UL)
    double ap_hop_distance_m = 400.0;
    double p_out_total = 0.1;
    int mcs = 10;

    /// Canonical scenario with default device profiles and per-hop
    /// outage split applied.
    static RelayScenario make(Direction dir, DeploymentModel st_deployment,
                              double ap_hop_distance_m, double p_out_total,
                              int mcs, double rician_k_db = 9.0,
                              double ap_tx_power_dbm = 10.0);
};

struct RelayRangeResult {
    double st_hop_max_m = 0;
    double total_max_m = 0;
    int limiting_hop = 2;
    std::pair<double, double> per_hop_fm_db;  // (AP hop, ST hop)
};

/// Equal split of the end-to-end outage budget across the two hops.
std::pair<double, double> split_outage(double p_out_total, double first_share = 0.5);

/// Eq-exact and first-order end-to-end packet error rates of a DF cascade.
struct DfPer {
    double exact = 0;
    double approx = 0;
};
DfPer df_per(double per1, double per2);

/// Half-duplex DF end-to-end rate: half of the weaker hop.
double df_rate(double r1_bps, double r2_bps);

/// Range of the ST-adjacent hop once the AP-adjacent hop is pinned at its
/// fixed distance; throws CoverageError naming the deficit if the fixed
/// hop itself cannot close.
RelayRangeResult relay_max_range(const RelayScenario& s, double mds_dbm);

/// R_DF over a grid of ST-hop distances, with the PER and outage budgets
/// split equally across hops.
std::vector<std::pair<double, double>> relay_rate_sweep(
    const RelayScenario& s, const RateQuery& end_to_end_query,
    const std::vector<double>& st_hop_distances_m);

/// Largest ST-hop distance at which R_DF still meets `target_rate_bps`.
double relay_max_distance_at_rate(const RelayScenario& s,
                                  const RateQuery& end_to_end_query,
                                  double target_rate_bps);

} // namespace ahlink

#endif
