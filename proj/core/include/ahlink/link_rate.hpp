#ifndef AHLINK_LINK_RATE_HPP
#define AHLINK_LINK_RATE_HPP

#include "ahlink/fading.hpp"
#include "ahlink/propagation.hpp"

namespace ahlink {

constexpr double kBoltzmann = 1.380649e-23;  // J/K

/// Packet / coding parameters of a rate query.
struct RateQuery {
    long packet_length_bits = 32768;  // 4096 bytes
    double target_per = 0.1;
    double coding_gain_db = 0.0;      // 8 dB for the LDPC model
    double temperature_k = 290.0;
};

/// Thermal noise floor seen by a receiver.
struct NoiseModel {
    double noise_figure_db = 3.0;
    double temperature_k = 290.0;

    /// N0 in dBm/Hz: 10 log10(k T * 1000) + F, about -174 + F at 290 K.
    double spectral_density_dbm_hz() const;
};

/// Gaussian tail Q(x) and its inverse (bisection against the forward
/// function, relative error below 1e-6 on the probability).
double q_function(double x);
double q_function_inverse(double p);

/// BER = 1 - (1 - PER)^(1/L).
double ber_from_per(double per, long packet_length_bits);

/// Required Eb/N0 in dB for coherent BPSK, BER = Q(sqrt(2 Eb/N0)).
double ebn0_for_ber_bpsk(double ber);

/// Budget-limited achievable rate at distance d, in bits/s:
/// R_dB = P_tx + G_tx - PL(d) - FM + G_rx - (Eb/N0 - G_code) - N0.
double max_rate_at_distance(const DeviceProfile& tx, const DeviceProfile& rx,
                            const DeploymentModel& model, const FadingModel& fading,
                            double p_out, double distance_m, const RateQuery& q);

/// Closed-form inversion of the rate chain in d. Throws CoverageError
/// when the target rate is not achievable even at 1 m.
double max_distance_at_rate(const DeviceProfile& tx, const DeviceProfile& rx,
                            const DeploymentModel& model, const FadingModel& fading,
                            double p_out, const RateQuery& q, double target_rate_bps);

} // namespace ahlink

#endif
