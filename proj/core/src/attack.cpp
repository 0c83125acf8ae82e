#include "qkdsc/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qkdsc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_setting(const ClonerSetting& setting) {
    if (!(setting.eta >= 0.0 && setting.eta <= std::numbers::pi / 2.0 + 1e-12))
        throw std::invalid_argument("ClonerSetting: eta outside [0, pi/2]");
}

// Index into the Bob x Eve x Eve' register: |b e e'> -> 4b + 2e + e'.
constexpr std::size_t idx(int b, int e, int ep) {
    return static_cast<std::size_t>(4 * b + 2 * e + ep);
}

}  // namespace

StateVector signal_state(int bit, Basis basis) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("signal_state: bit must be 0 or 1");
    const Complex second = (basis == Basis::X) ? Complex{bit == 0 ? 1.0 : -1.0, 0.0}
                                               : Complex{0.0, bit == 0 ? 1.0 : -1.0};
    return StateVector({kInvSqrt2, second * kInvSqrt2});
}

std::pair<StateVector, StateVector> cloner_images(const ClonerSetting& setting) {
    check_setting(setting);
    const double c = std::cos(setting.eta);
    const double s = std::sin(setting.eta);

    std::vector<Complex> img0(8, Complex{0.0, 0.0});
    img0[idx(0, 0, 0)] = kInvSqrt2;
    img0[idx(0, 1, 1)] = c * kInvSqrt2;
    img0[idx(1, 0, 1)] = s * kInvSqrt2;

    std::vector<Complex> img1(8, Complex{0.0, 0.0});
    img1[idx(1, 0, 0)] = c * kInvSqrt2;
    img1[idx(0, 1, 0)] = s * kInvSqrt2;
    img1[idx(1, 1, 1)] = kInvSqrt2;

    return {StateVector(std::move(img0)), StateVector(std::move(img1))};
}

StateVector clone(const StateVector& input, const ClonerSetting& setting) {
    if (input.dim() != 2) throw std::invalid_argument("clone: input must be a qubit");
    const auto [img0, img1] = cloner_images(setting);
    std::vector<Complex> out(8);
    for (std::size_t i = 0; i < 8; ++i) out[i] = input[0] * img0[i] + input[1] * img1[i];
    return StateVector(std::move(out));
}

double bob_qber(const ClonerSetting& setting) {
    const StateVector sent = signal_state(0, Basis::X);
    const DensityMatrix joint = DensityMatrix::pure(clone(sent, setting));
    const DensityMatrix bob = partial_trace(joint, {2, 2, 2}, {0});
    const StateVector wrong = signal_state(1, Basis::X);
    // The projection lies in [0, 1/2] up to rounding noise.
    return std::clamp(expectation(bob, wrong.projector()), 0.0, 0.5);
}

DensityMatrix eve_state(const ClonerSetting& setting, int bit, Basis basis) {
    const DensityMatrix joint = DensityMatrix::pure(clone(signal_state(bit, basis), setting));
    return partial_trace(joint, {2, 2, 2}, {1, 2});
}

double holevo(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    if (rho0.dim() != rho1.dim()) throw std::invalid_argument("holevo: dimension mismatch");
    ComplexMatrix avg = rho0.matrix();
    avg += rho1.matrix();
    avg *= Complex{0.5, 0.0};
    return vn_entropy(DensityMatrix(std::move(avg))) -
           0.5 * vn_entropy(rho0) - 0.5 * vn_entropy(rho1);
}

double holevo_with_sidechannel(const DensityMatrix& rho0, const DensityMatrix& rho1,
                               const StateVector& side0, const StateVector& side1) {
    if (rho0.dim() != rho1.dim())
        throw std::invalid_argument("holevo_with_sidechannel: dimension mismatch");
    const ComplexMatrix joint0 = kron(rho0.matrix(), side0.projector());
    const ComplexMatrix joint1 = kron(rho1.matrix(), side1.projector());
    ComplexMatrix avg = joint0;
    avg += joint1;
    avg *= Complex{0.5, 0.0};
    return vn_entropy(DensityMatrix(std::move(avg))) -
           0.5 * vn_entropy(DensityMatrix(joint0)) - 0.5 * vn_entropy(DensityMatrix(joint1));
}

double holevo_with_sidechannel(const DensityMatrix& rho0, const DensityMatrix& rho1,
                               const SideChannelStates& sc) {
    return holevo_with_sidechannel(rho0, rho1, sc.state(0, false), sc.state(1, false));
}

AttackResult evaluate_attack(const ClonerSetting& setting, const SideChannelStates& sc,
                             bool average_bases) {
    check_setting(setting);
    AttackResult out;
    out.eta = setting.eta;
    out.q_bob = bob_qber(setting);

    const DensityMatrix rho0x = eve_state(setting, 0, Basis::X);
    const DensityMatrix rho1x = eve_state(setting, 1, Basis::X);
    out.chi = holevo(rho0x, rho1x);
    out.chi_delta =
        holevo_with_sidechannel(rho0x, rho1x, sc.state(0, false), sc.state(1, false));

    if (average_bases) {
        const DensityMatrix rho0y = eve_state(setting, 0, Basis::Y);
        const DensityMatrix rho1y = eve_state(setting, 1, Basis::Y);
        out.chi = 0.5 * (out.chi + holevo(rho0y, rho1y));
        out.chi_delta = 0.5 * (out.chi_delta + holevo_with_sidechannel(rho0y, rho1y,
                                                                       sc.state(0, true),
                                                                       sc.state(1, true)));
    }

    // chi_delta >= chi analytically; shave off eigensolver noise.
    if (out.chi_delta < out.chi) {
        if (out.chi - out.chi_delta > 1e-10)
            throw std::logic_error("evaluate_attack: chi_delta fell below chi");
        out.chi_delta = out.chi;
    }
    return out;
}

}  // namespace qkdsc
