#pragma once

#include "qkdsc/qmath.hpp"

#include <vector>

namespace qkdsc {

/// Probability that the basis-choice quantum coin reveals the basis.
/// Always in [0, 1/2]; 1/2 means the basis choice is fully compromised.
struct Imbalance {
    double delta = 0.0;
};

/// 4x4 Gram matrix of the side-channel states attached to the four signal
/// states, in the order (0 X), (1 X), (0 Y), (1 Y). Hermitian, unit
/// diagonal, positive semidefinite.
class SideChannelGram {
public:
    /// Validates Hermiticity (1e-12), unit diagonal (1e-12) and positive
    /// semidefiniteness (min eigenvalue >= -1e-10, reported on failure).
    static SideChannelGram from_matrix(ComplexMatrix g);

    /// All sixteen pairwise overlaps equal to s off the diagonal.
    static SideChannelGram uniform(double s);

    const ComplexMatrix& matrix() const { return g_; }

private:
    explicit SideChannelGram(ComplexMatrix g) : g_(std::move(g)) {}
    ComplexMatrix g_;
};

/// Concrete 4-dimensional vectors realizing a side-channel Gram matrix,
/// one per alphabet letter in the order (0 X), (1 X), (0 Y), (1 Y).
struct SideChannelStates {
    std::vector<StateVector> states;

    const StateVector& state(std::size_t bit, bool basis_y) const {
        return states[2 * (basis_y ? 1 : 0) + bit];
    }
};

/// Vectors whose pairwise inner products reproduce `gram` (within 1e-10).
/// Pivoted Cholesky, so rank-deficient PSD inputs (identical states) work.
SideChannelStates embed_states(const SideChannelGram& gram);

/// Basis-imbalance parameter from the four cross-basis overlaps:
/// delta = (4 - Re[<0X|0Y> + <0X|1Y> + <1X|0Y> + <1X|1Y>]) / 8,
/// clamped to [0, 1/2].
Imbalance imbalance_from_gram(const SideChannelGram& gram);

/// Uniform-overlap special case: delta = (1 - s) / 2.
Imbalance imbalance_uniform(double s);

/// Hong-Ou-Mandel interference visibility Re Tr[rho1 rho2].
double hom_visibility(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Upper bound on the imbalance reachable from a measured HOM visibility v
/// of weak coherent pulses with mean photon number mu:
///   delta = (1 - cos(2 acos((1+x)/2) + acos(x))) / 2,  x = e^{mu (sqrt(2v)-1)},
/// clamped to [0, 1/2]. Defined for v <= 1/2 (x <= 1); larger v is rejected.
Imbalance imbalance_from_visibility(double v, double mu);

}  // namespace qkdsc
