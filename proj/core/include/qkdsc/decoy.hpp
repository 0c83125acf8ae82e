#pragma once

#include "qkdsc/sidechannel.hpp"

#include <cstddef>

namespace qkdsc {

/// Fiber channel and source configuration for the asymptotic decoy-state
/// rate model. Defaults follow the usual simulation setting: 0.2 dB/km
/// fiber, 1e-5 dark-count yield, random dark-count bits (e0 = 1/2), 1%
/// optical misalignment, mu = 0.5 signal intensity, ideal error correction.
struct ChannelParams {
    double alpha_db_per_km = 0.2;
    double length_km = 0.0;
    double eta_bob = 1.0;
    double y0 = 1e-5;
    double e0 = 0.5;
    double e_det = 0.01;
    double mu = 0.5;
    double f = 1.0;

    void validate() const;
};

/// One evaluated distance: observables (gain, QBER), the single-photon
/// quantities, and the secret-key rate (floored at 0).
struct RatePoint {
    double length_km = 0.0;
    double q_mu = 0.0;
    double e_mu = 0.0;
    double y1 = 0.0;
    double e1 = 0.0;
    double rate = 0.0;
};

/// Overall transmittance 10^(-alpha L / 10) * eta_bob.
double transmittance(const ChannelParams& p);

/// n-photon transmission probability 1 - (1 - eta)^n.
double eta_n(double eta, std::size_t n);

/// n-photon yield Y_n = Y_0 + eta_n, capped at 1.
double yield_n(const ChannelParams& p, std::size_t n);

/// Gain of the signal pulses: Q_mu = Y_0 + 1 - e^(-eta mu), the Poisson
/// average of the yields.
double gain_qmu(const ChannelParams& p);

/// Observed QBER, with an eavesdropping error q_attack folded into the
/// detector error: E_mu = [e0 Y_0 + (e_det + q_attack)(1 - e^(-eta mu))] / Q_mu.
double qber_emu(const ChannelParams& p, double q_attack);

/// Single-photon error rate e1 = [e0 Y_0 + (e_det + q_attack) eta] / Y_1.
double single_photon_error(const ChannelParams& p, double q_attack);

/// Asymptotic decoy-state BB84 rate
///   R = max(0, (Q_1 (1 - h2(e1)) - f Q_mu h2(E_mu)) / 2),  Q_1 = mu e^(-mu) Y_1.
/// q_attack_e1 enters the privacy-amplification term (e1), q_attack_emu the
/// error-correction term (E_mu); they differ when leakage is modeled as an
/// effective error that does not show up in the observed QBER.
RatePoint key_rate_decoy(const ChannelParams& p, double q_attack_e1, double q_attack_emu);

/// GLLP-Koashi penalty for basis distinguishability: the imbalance is first
/// amplified by the lossless-channel correction delta' = min(delta / Y_1, 1/2),
/// then
///   e1' = e1 + 4(1-d')d'(1-2 e1) + 4(1-2d') sqrt(d'(1-d') e1 (1-e1)),
/// clamped to [0, 1/2] (1/2 saturates the entropy and kills the key).
double gllp_e1prime(double e1, Imbalance delta, double y1);

/// Decoy rate with e1 replaced by the GLLP-Koashi corrected e1'.
RatePoint key_rate_gllp(const ChannelParams& p, Imbalance delta, double q_attack_e1,
                        double q_attack_emu);

}  // namespace qkdsc
