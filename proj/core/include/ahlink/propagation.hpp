#ifndef AHLINK_PROPAGATION_HPP
#define AHLINK_PROPAGATION_HPP

#include <string>

#include "ahlink/errors.hpp"

namespace ahlink {

/// Outdoor path-loss model, PL(d) = intercept + slope * log10(d), d in meters.
/// Macro puts the antenna 15 m above rooftop, pico at rooftop level.
/// The 900 MHz carrier is baked into the intercepts.
struct DeploymentModel {
    enum class Kind { Macro, Pico };
    Kind kind = Kind::Macro;
    double intercept_db = 8.0;
    double slope_db_per_decade = 37.6;

    static DeploymentModel macro() { return {Kind::Macro, 8.0, 37.6}; }
    static DeploymentModel pico() { return {Kind::Pico, 23.3, 36.7}; }
    static DeploymentModel from_string(const std::string& name);
    std::string name() const { return kind == Kind::Macro ? "macro" : "pico"; }
};

/// RF parameters of one end of a link.
struct DeviceProfile {
    enum class Role { Ap, Rs, St };
    Role role = Role::Ap;
    double tx_power_dbm = 10.0;
    double antenna_gain_dbi = 3.0;
    double noise_figure_db = 3.0;

    static DeviceProfile ap(double tx_power_dbm = 10.0) {
        return {Role::Ap, tx_power_dbm, 3.0, 3.0};
    }
    static DeviceProfile rs() { return {Role::Rs, 10.0, 3.0, 3.0}; }
    static DeviceProfile st() { return {Role::St, 0.0, 0.0, 5.0}; }
};

struct LinkBudgetResult {
    double received_power_dbm = 0;
    double path_loss_db = 0;
    double fade_margin_db = 0;
};

/// PL(d) in dB. Domain: d >= 1 m.
double path_loss(const DeploymentModel& model, double distance_m);

/// Full budget: P_rx = P_tx + G_tx - PL(d) + G_rx - FM.
LinkBudgetResult link_budget(const DeviceProfile& tx, const DeviceProfile& rx,
                             const DeploymentModel& model, double distance_m,
                             double fade_margin_db);

double received_power(const DeviceProfile& tx, const DeviceProfile& rx,
                      const DeploymentModel& model, double distance_m,
                      double fade_margin_db);

/// Largest distance at which the received power stays at or above `mds_dbm`.
/// Throws CoverageError when the budget cannot close even at 1 m.
double max_range(const DeviceProfile& tx, const DeviceProfile& rx,
                 const DeploymentModel& model, double mds_dbm,
                 double fade_margin_db);

} // namespace ahlink

#endif
