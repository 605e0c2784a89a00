#include "ahlink/fading.hpp"

#include <cmath>

namespace ahlink {
namespace {

void check_probability(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("outage probability must lie in (0, 1), got " +
                                std::to_string(p));
}

double k_linear(double k_factor_db) {
    return std::pow(10.0, k_factor_db / 10.0);
}

/// Power CDF of a unit-mean-power Rician envelope: P(R^2 <= rho).
double rician_power_cdf(double k, double rho) {
    if (rho <= 0) return 0.0;
    return 1.0 - marcum_q1(std::sqrt(2.0 * k), std::sqrt(2.0 * (k + 1.0) * rho));
}

} // namespace

FadingModel FadingModel::from_string(const std::string& name, double k_db) {
    if (name == "none") return none();
    if (name == "rayleigh") return rayleigh();
    if (name == "rician") return rician(k_db);
    throw std::invalid_argument("unknown fading model '" + name +
                                "' (none|rayleigh|rician)");
}

std::string FadingModel::name() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Rayleigh: return "rayleigh";
        case Kind::Rician: return "rician";
    }
    return "?";
}

double marcum_q1(double a, double b) {
    // Q1(a,b) = sum_k Pois(k; a^2/2) * P(chi^2_{2(k+1)} > b^2).
    // All terms are positive; the truncation error is bounded by the
    // remaining Poisson tail mass.
    const double alpha = 0.5 * a * a;
    const double beta = 0.5 * b * b;
    if (b <= 0) return 1.0;

    double pois = std::exp(-alpha);      // Pois(k; alpha)
    double chi_term = std::exp(-beta);   // exp(-beta) beta^k / k!
    double chi_cum = chi_term;           // P(chi^2_{2(k+1)} > b^2)
    double pois_cum = pois;
    double q = 0.0;
    const double tol = 1e-12;
    for (int k = 0; k < 10000; ++k) {
        q += pois * chi_cum;
        if (1.0 - pois_cum < tol) break;
        pois *= alpha / (k + 1);
        pois_cum += pois;
        chi_term *= beta / (k + 1);
        chi_cum += chi_term;
    }
    if (q < 0) q = 0;
    if (q > 1) q = 1;
    return q;
}

double rayleigh_fade_margin(double p_out) {
    check_probability(p_out);
    return -10.0 * std::log10(-std::log1p(-p_out));
}

double rician_fade_margin(double k_factor_db, double p_out) {
    check_probability(p_out);
    if (!std::isfinite(k_factor_db))
        throw std::domain_error("Rician K factor must be finite (in dB)");
    const double k = k_linear(k_factor_db);

    // Bisect on rho = 10^(-FM/10); the CDF is strictly increasing in rho.
    double lo = 1e-30, hi = 10.0;
    if (rician_power_cdf(k, hi) < p_out)
        throw NumericError("rician_fade_margin: target outage not bracketed");
    bool converged = false;
    for (int i = 0; i < 200; ++i) {
        double mid = std::sqrt(lo * hi);  // bisection in log space
        if (rician_power_cdf(k, mid) < p_out) lo = mid; else hi = mid;
        if (10.0 * std::log10(hi / lo) < 1e-4) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericError("rician_fade_margin: no convergence after 200 iterations");
    return -10.0 * std::log10(std::sqrt(lo * hi));
}

double fade_margin(const FadingModel& model, double p_out) {
    switch (model.kind) {
        case FadingModel::Kind::None: return 0.0;
        case FadingModel::Kind::Rayleigh: return rayleigh_fade_margin(p_out);
        case FadingModel::Kind::Rician: return rician_fade_margin(model.k_factor_db, p_out);
    }
    throw std::logic_error("unreachable");
}

double outage_from_margin(const FadingModel& model, double fm_db) {
    const double rho = std::pow(10.0, -fm_db / 10.0);
    switch (model.kind) {
        case FadingModel::Kind::None:
            throw std::domain_error("outage_from_margin requires a fading model");
        case FadingModel::Kind::Rayleigh:
            return -std::expm1(-rho);
        case FadingModel::Kind::Rician:
            return rician_power_cdf(k_linear(model.k_factor_db), rho);
    }
    throw std::logic_error("unreachable");
}

} // namespace ahlink
