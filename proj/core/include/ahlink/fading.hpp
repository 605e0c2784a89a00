#ifndef AHLINK_FADING_HPP
#define AHLINK_FADING_HPP

#include <string>

#include "ahlink/errors.hpp"

namespace ahlink {

/// Small-scale fading statistics of one hop. The envelope is normalized to
/// unit mean power, E[R^2] = 1, so fade margins are pure dB offsets in the
/// link budget.
struct FadingModel {
    enum class Kind { None, Rayleigh, Rician };
    Kind kind = Kind::None;
    double k_factor_db = 9.0;  // Rician only

    static FadingModel none() { return {Kind::None, 0.0}; }
    static FadingModel rayleigh() { return {Kind::Rayleigh, 0.0}; }
    static FadingModel rician(double k_db = 9.0) { return {Kind::Rician, k_db}; }
    static FadingModel from_string(const std::string& name, double k_db = 9.0);
    std::string name() const;
};

/// First-order Marcum Q function, Q1(a, b), by the canonical
/// Poisson-weighted chi-square series; absolute error below 1e-10.
double marcum_q1(double a, double b);

/// FM = -10 log10(-ln(1 - p_out)). Negative above p_out = 1 - 1/e.
double rayleigh_fade_margin(double p_out);

/// Fade margin for a unit-mean-power Rician envelope, solved by bisection
/// on the power CDF 1 - Q1(sqrt(2K), sqrt(2(K+1)rho)) to 0.01 dB.
double rician_fade_margin(double k_factor_db, double p_out);

/// Margin for any fading model (Kind::None returns 0).
double fade_margin(const FadingModel& model, double p_out);

/// Forward CDF: outage probability when `fm_db` of margin is budgeted.
double outage_from_margin(const FadingModel& model, double fm_db);

} // namespace ahlink

#endif
