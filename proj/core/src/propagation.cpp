#include "ahlink/propagation.hpp"

#include <cmath>
#include <sstream>

namespace ahlink {

DeploymentModel DeploymentModel::from_string(const std::string& name) {
    if (name == "macro") return macro();
    if (name == "pico") return pico();
    throw std::invalid_argument("unknown deployment '" + name + "' (macro|pico)");
}

double path_loss(const DeploymentModel& model, double distance_m) {
    if (!(distance_m >= 1.0))
        throw std::domain_error("path loss model undefined below 1 m (d=" +
                                std::to_string(distance_m) + ")");
    return model.intercept_db + model.slope_db_per_decade * std::log10(distance_m);
}

LinkBudgetResult link_budget(const DeviceProfile& tx, const DeviceProfile& rx,
                             const DeploymentModel& model, double distance_m,
                             double fade_margin_db) {
    if (fade_margin_db < 0)
        throw std::domain_error("fade margin must be non-negative");
    LinkBudgetResult r;
    r.path_loss_db = path_loss(model, distance_m);
    r.fade_margin_db = fade_margin_db;
    r.received_power_dbm = tx.tx_power_dbm + tx.antenna_gain_dbi - r.path_loss_db +
                           rx.antenna_gain_dbi - fade_margin_db;
    return r;
}

double received_power(const DeviceProfile& tx, const DeviceProfile& rx,
                      const DeploymentModel& model, double distance_m,
                      double fade_margin_db) {
    return link_budget(tx, rx, model, distance_m, fade_margin_db).received_power_dbm;
}

double max_range(const DeviceProfile& tx, const DeviceProfile& rx,
                 const DeploymentModel& model, double mds_dbm,
                 double fade_margin_db) {
    double budget = tx.tx_power_dbm + tx.antenna_gain_dbi + rx.antenna_gain_dbi -
                    fade_margin_db - mds_dbm;
    // PL(1 m) = intercept; anything below that and the link never closes.
    if (budget < model.intercept_db) {
        std::ostringstream os;
        os << "no coverage: budget " << budget << " dB is below the " << model.name()
           << " intercept " << model.intercept_db << " dB even at 1 m";
        throw CoverageError(os.str());
    }
    return std::pow(10.0, (budget - model.intercept_db) / model.slope_db_per_decade);
}

} // namespace ahlink
