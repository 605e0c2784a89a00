#include "ahlink/link_rate.hpp"

#include <cmath>
#include <sstream>

namespace ahlink {
namespace {

void validate_query(const RateQuery& q) {
    if (q.packet_length_bits < 1)
        throw std::domain_error("packet length must be at least 1 bit");
    if (!(q.target_per > 0.0 && q.target_per < 1.0))
        throw std::domain_error("target PER must lie in (0, 1)");
    if (q.coding_gain_db < 0)
        throw std::domain_error("coding gain must be non-negative");
}

/// Required Eb/N0 in dB after coding gain, plus the receiver noise floor,
/// shared by both directions of the rate chain.
double rate_budget_db(const DeviceProfile& tx, const DeviceProfile& rx,
                      const FadingModel& fading, double p_out, const RateQuery& q) {
    validate_query(q);
    const double ber = ber_from_per(q.target_per, q.packet_length_bits);
    const double ebn0_db = ebn0_for_ber_bpsk(ber) - q.coding_gain_db;
    const double fm = fade_margin(fading, p_out);
    NoiseModel noise{rx.noise_figure_db, q.temperature_k};
    return tx.tx_power_dbm + tx.antenna_gain_dbi + rx.antenna_gain_dbi - fm -
           ebn0_db - noise.spectral_density_dbm_hz();
}

} // namespace

double NoiseModel::spectral_density_dbm_hz() const {
    return 10.0 * std::log10(kBoltzmann * temperature_k * 1000.0) + noise_figure_db;
}

double q_function(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double q_function_inverse(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("Q^-1 domain is (0, 1)");
    // Q is strictly decreasing; bracket then bisect.
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (q_function(mid) > p) lo = mid; else hi = mid;
        if (hi - lo < 1e-13 * std::max(1.0, std::abs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

double ber_from_per(double per, long packet_length_bits) {
    if (packet_length_bits < 1)
        throw std::domain_error("packet length must be at least 1 bit");
    if (!(per > 0.0 && per < 1.0))
        throw std::domain_error("PER must lie in (0, 1)");
    // 1 - (1-per)^(1/L), via expm1/log1p to keep precision for tiny BER.
    return -std::expm1(std::log1p(-per) / static_cast<double>(packet_length_bits));
}

double ebn0_for_ber_bpsk(double ber) {
    if (!(ber > 0.0 && ber < 0.5))
        throw std::domain_error("coherent BPSK BER must lie in (0, 0.5)");
    const double x = q_function_inverse(ber);
    return 10.0 * std::log10(0.5 * x * x);
}

double max_rate_at_distance(const DeviceProfile& tx, const DeviceProfile& rx,
                            const DeploymentModel& model, const FadingModel& fading,
                            double p_out, double distance_m, const RateQuery& q) {
    const double r_db = rate_budget_db(tx, rx, fading, p_out, q) -
                        path_loss(model, distance_m);
    return std::pow(10.0, r_db / 10.0);
}

double max_distance_at_rate(const DeviceProfile& tx, const DeviceProfile& rx,
                            const DeploymentModel& model, const FadingModel& fading,
                            double p_out, const RateQuery& q, double target_rate_bps) {
    if (!(target_rate_bps > 0))
        throw std::domain_error("target rate must be positive");
    const double pl_allowed = rate_budget_db(tx, rx, fading, p_out, q) -
                              10.0 * std::log10(target_rate_bps);
    if (pl_allowed < model.intercept_db) {
        std::ostringstream os;
        os << "no coverage at rate " << target_rate_bps << " b/s: allowed path loss "
           << pl_allowed << " dB is below the " << model.name() << " intercept";
        throw CoverageError(os.str());
    }
    return std::pow(10.0, (pl_allowed - model.intercept_db) / model.slope_db_per_decade);
}

} // namespace ahlink
