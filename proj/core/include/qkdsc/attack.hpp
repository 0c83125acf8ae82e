#pragma once

#include "qkdsc/qmath.hpp"
#include "qkdsc/sidechannel.hpp"

#include <utility>

namespace qkdsc {

/// Strength of the phase-covariant cloner, an angle in [0, pi/2].
/// 0 leaves the signal untouched; pi/2 swaps the signal into Eve's memory.
struct ClonerSetting {
    double eta = 0.0;
};

enum class Basis { X, Y };

/// One cloner evaluation against one side-channel model: Bob's QBER, the
/// Holevo bound on Eve's information without (chi) and with (chi_delta)
/// the side channel attached.
struct AttackResult {
    double eta = 0.0;
    double q_bob = 0.0;
    double chi = 0.0;
    double chi_delta = 0.0;
};

/// Signal-basis states of the protocol alphabet (equatorial qubits).
StateVector signal_state(int bit, Basis basis);

/// Images of |0_z> and |1_z> (each tensored with Eve's |0_z>|0_z> ancillas)
/// under the cloner, in the subsystem order Bob x Eve x Eve'. These two
/// vectors define the isometry by linearity; they are orthonormal for
/// every eta.
std::pair<StateVector, StateVector> cloner_images(const ClonerSetting& setting);

/// Applies the cloner isometry to a qubit state; output is an 8-dimensional
/// unit vector on Bob x Eve x Eve'.
StateVector clone(const StateVector& input, const ClonerSetting& setting);

/// Bob's error probability under the cloner, computed through the full
/// clone / partial-trace / projection pipeline. Equals (1 - cos eta)/2 for
/// every equatorial input.
double bob_qber(const ClonerSetting& setting);

/// Eve's reduced state (her two ancillas, dimension 4) after cloning the
/// signal state for `bit` in `basis`.
DensityMatrix eve_state(const ClonerSetting& setting, int bit, Basis basis);

/// Holevo bound chi = S((rho0+rho1)/2) - S(rho0)/2 - S(rho1)/2 for a
/// uniform binary ensemble; lies in [0, 1].
double holevo(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Holevo bound of the joint ensemble rho_i (x) |side_i><side_i|: Eve
/// measures her clones together with the side-channel states.
double holevo_with_sidechannel(const DensityMatrix& rho0, const DensityMatrix& rho1,
                               const StateVector& side0, const StateVector& side1);

/// Convenience overload using the X-basis side-channel states.
double holevo_with_sidechannel(const DensityMatrix& rho0, const DensityMatrix& rho1,
                               const SideChannelStates& sc);

/// Full attack evaluation for one cloner setting and one side-channel
/// realization. With average_bases the X- and Y-basis Holevo values are
/// averaged; the default uses the X basis only.
AttackResult evaluate_attack(const ClonerSetting& setting, const SideChannelStates& sc,
                             bool average_bases = false);

}  // namespace qkdsc
