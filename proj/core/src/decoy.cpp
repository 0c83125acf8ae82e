#include "qkdsc/decoy.hpp"

#include "qkdsc/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qkdsc {

namespace {

void check_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string("ChannelParams: ") + name + " outside [0, 1]");
}

void check_attack_error(double q, const char* name) {
    if (!(q >= 0.0 && q <= 0.5))
        throw std::invalid_argument(std::string(name) + ": attack error outside [0, 0.5]");
}

}  // namespace

void ChannelParams::validate() const {
    if (!(alpha_db_per_km >= 0.0)) throw std::invalid_argument("ChannelParams: alpha < 0");
    if (!(length_km >= 0.0)) throw std::invalid_argument("ChannelParams: length < 0");
    check_probability(eta_bob, "eta_bob");
    check_probability(y0, "y0");
    check_probability(e0, "e0");
    check_probability(e_det, "e_det");
    if (!(mu > 0.0)) throw std::invalid_argument("ChannelParams: mu must be positive");
    if (!(f >= 1.0)) throw std::invalid_argument("ChannelParams: f must be >= 1");
}

double transmittance(const ChannelParams& p) {
    p.validate();
    return std::pow(10.0, -p.alpha_db_per_km * p.length_km / 10.0) * p.eta_bob;
}

double eta_n(double eta, std::size_t n) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("eta_n: transmittance outside [0, 1]");
    if (n == 0) return 0.0;
    return 1.0 - std::pow(1.0 - eta, static_cast<double>(n));
}

double yield_n(const ChannelParams& p, std::size_t n) {
    return std::min(p.y0 + eta_n(transmittance(p), n), 1.0);
}

double gain_qmu(const ChannelParams& p) {
    return p.y0 + 1.0 - std::exp(-transmittance(p) * p.mu);
}

double qber_emu(const ChannelParams& p, double q_attack) {
    check_attack_error(q_attack, "qber_emu");
    const double detected = 1.0 - std::exp(-transmittance(p) * p.mu);
    return (p.e0 * p.y0 + (p.e_det + q_attack) * detected) / gain_qmu(p);
}

double single_photon_error(const ChannelParams& p, double q_attack) {
    check_attack_error(q_attack, "single_photon_error");
    const double y1 = yield_n(p, 1);
    if (y1 <= 0.0)
        throw std::invalid_argument("single_photon_error: Y_1 = 0, channel is degenerate");
    return (p.e0 * p.y0 + (p.e_det + q_attack) * transmittance(p)) / y1;
}

RatePoint key_rate_decoy(const ChannelParams& p, double q_attack_e1, double q_attack_emu) {
    RatePoint out;
    out.length_km = p.length_km;
    out.y1 = yield_n(p, 1);
    out.q_mu = gain_qmu(p);
    out.e_mu = qber_emu(p, q_attack_emu);
    out.e1 = single_photon_error(p, q_attack_e1);

    const double q1 = p.mu * std::exp(-p.mu) * out.y1;
    // e1 beyond 1/2 saturates the entropy: the single-photon term is dead.
    const double h_e1 = binary_entropy(std::min(out.e1, 0.5));
    const double raw = 0.5 * (q1 * (1.0 - h_e1) - p.f * out.q_mu * binary_entropy(out.e_mu));
    out.rate = std::max(raw, 0.0);
    return out;
}

double gllp_e1prime(double e1, Imbalance delta, double y1) {
    if (!(e1 >= 0.0 && e1 <= 0.5))
        throw std::invalid_argument("gllp_e1prime: e1 outside [0, 0.5]");
    if (!(delta.delta >= 0.0 && delta.delta <= 0.5))
        throw std::invalid_argument("gllp_e1prime: delta outside [0, 0.5]");
    if (!(y1 > 0.0 && y1 <= 1.0))
        throw std::invalid_argument("gllp_e1prime: y1 outside (0, 1]");
    const double dp = std::min(delta.delta / y1, 0.5);
    const double inflated = e1 + 4.0 * (1.0 - dp) * dp * (1.0 - 2.0 * e1) +
                            4.0 * (1.0 - 2.0 * dp) * std::sqrt(dp * (1.0 - dp) * e1 * (1.0 - e1));
    return std::clamp(inflated, 0.0, 0.5);
}

RatePoint key_rate_gllp(const ChannelParams& p, Imbalance delta, double q_attack_e1,
                        double q_attack_emu) {
    RatePoint out;
    out.length_km = p.length_km;
    out.y1 = yield_n(p, 1);
    out.q_mu = gain_qmu(p);
    out.e_mu = qber_emu(p, q_attack_emu);

    const double e1_base = std::min(single_photon_error(p, q_attack_e1), 0.5);
    out.e1 = gllp_e1prime(e1_base, delta, out.y1);

    const double q1 = p.mu * std::exp(-p.mu) * out.y1;
    const double raw =
        0.5 * (q1 * (1.0 - binary_entropy(out.e1)) - p.f * out.q_mu * binary_entropy(out.e_mu));
    out.rate = std::max(raw, 0.0);
    return out;
}

}  // namespace qkdsc
