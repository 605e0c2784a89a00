#include "ahlink/relay.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ahlink {
namespace {

RateQuery per_hop_query(const RateQuery& end_to_end) {
    // PER_DF ~ PER_1 + PER_2 with equal hops, so each hop gets half.
    RateQuery q = end_to_end;
    q.target_per = end_to_end.target_per / 2.0;
    return q;
}

} // namespace

RelayScenario RelayScenario::make(Direction dir, DeploymentModel st_deployment,
                                  double ap_hop_distance_m, double p_out_total,
                                  int mcs, double rician_k_db,
                                  double ap_tx_power_dbm) {
    RelayScenario s;
    s.direction = dir;
    s.ap_hop_distance_m = ap_hop_distance_m;
    s.p_out_total = p_out_total;
    s.mcs = mcs;

    auto [p1, p2] = split_outage(p_out_total);
    const auto ap = DeviceProfile::ap(ap_tx_power_dbm);
    const auto rs = DeviceProfile::rs();
    const auto st = DeviceProfile::st();

    if (dir == Direction::Downlink) {
        s.ap_hop = {ap, rs, DeploymentModel::macro(), FadingModel::rician(rician_k_db), p1};
        s.st_hop = {rs, st, st_deployment, FadingModel::rayleigh(), p2};
    } else {
        s.st_hop = {st, rs, st_deployment, FadingModel::rayleigh(), p1};
        s.ap_hop = {rs, ap, DeploymentModel::macro(), FadingModel::rician(rician_k_db), p2};
    }
    return s;
}

std::pair<double, double> split_outage(double p_out_total, double first_share) {
    if (!(p_out_total > 0.0 && p_out_total < 1.0))
        throw std::domain_error("end-to-end outage must lie in (0, 1)");
    if (!(first_share > 0.0 && first_share < 1.0))
        throw std::domain_error("outage share must lie in (0, 1)");
    return {p_out_total * first_share, p_out_total * (1.0 - first_share)};
}

DfPer df_per(double per1, double per2) {
    if (!(per1 >= 0.0 && per1 < 1.0) || !(per2 >= 0.0 && per2 < 1.0))
        throw std::domain_error("per-hop PER must lie in [0, 1)");
    return {per1 + per2 * (1.0 - per1), per1 + per2};
}

double df_rate(double r1_bps, double r2_bps) {
    if (r1_bps < 0 || r2_bps < 0)
        throw std::domain_error("hop rates must be non-negative");
    return 0.5 * std::min(r1_bps, r2_bps);
}

RelayRangeResult relay_max_range(const RelayScenario& s, double mds_dbm) {
    const double fm_ap = fade_margin(s.ap_hop.fading, s.ap_hop.p_out);
    const double fm_st = fade_margin(s.st_hop.fading, s.st_hop.p_out);

    const double p_ap = received_power(s.ap_hop.tx, s.ap_hop.rx, s.ap_hop.deployment,
                                       s.ap_hop_distance_m, fm_ap);
    if (p_ap < mds_dbm) {
        std::ostringstream os;
        os << "AP-adjacent hop infeasible at " << s.ap_hop_distance_m << " m: received "
           << p_ap << " dBm is " << (mds_dbm - p_ap) << " dB short of MDS " << mds_dbm;
        throw CoverageError(os.str());
    }

    RelayRangeResult r;
    r.per_hop_fm_db = {fm_ap, fm_st};
    r.st_hop_max_m = max_range(s.st_hop.tx, s.st_hop.rx, s.st_hop.deployment,
                               mds_dbm, fm_st);
    r.total_max_m = s.ap_hop_distance_m + r.st_hop_max_m;
    r.limiting_hop = (s.direction == Direction::Downlink) ? 2 : 1;
    return r;
}

std::vector<std::pair<double, double>> relay_rate_sweep(
    const RelayScenario& s, const RateQuery& end_to_end_query,
    const std::vector<double>& st_hop_distances_m) {
    const RateQuery hop_q = per_hop_query(end_to_end_query);
    const double r_ap = max_rate_at_distance(s.ap_hop.tx, s.ap_hop.rx,
                                             s.ap_hop.deployment, s.ap_hop.fading,
                                             s.ap_hop.p_out, s.ap_hop_distance_m, hop_q);
    std::vector<std::pair<double, double>> out;
    out.reserve(st_hop_distances_m.size());
    for (double d : st_hop_distances_m) {
        const double r_st = max_rate_at_distance(s.st_hop.tx, s.st_hop.rx,
                                                 s.st_hop.deployment, s.st_hop.fading,
                                                 s.st_hop.p_out, d, hop_q);
        out.emplace_back(d, df_rate(r_ap, r_st));
    }
    return out;
}

double relay_max_distance_at_rate(const RelayScenario& s,
                                  const RateQuery& end_to_end_query,
                                  double target_rate_bps) {
    const RateQuery hop_q = per_hop_query(end_to_end_query);
    const double per_hop_target = 2.0 * target_rate_bps;  // R_DF = 0.5 min(R1, R2)
    const double r_ap = max_rate_at_distance(s.ap_hop.tx, s.ap_hop.rx,
                                             s.ap_hop.deployment, s.ap_hop.fading,
                                             s.ap_hop.p_out, s.ap_hop_distance_m, hop_q);
    if (r_ap < per_hop_target) {
        std::ostringstream os;
        os << "AP-adjacent hop at " << s.ap_hop_distance_m << " m supports only "
           << r_ap << " b/s, below the per-hop requirement " << per_hop_target << " b/s";
        throw CoverageError(os.str());
    }
    return max_distance_at_rate(s.st_hop.tx, s.st_hop.rx, s.st_hop.deployment,
                                s.st_hop.fading, s.st_hop.p_out, hop_q,
                                per_hop_target);
}

} // namespace ahlink
