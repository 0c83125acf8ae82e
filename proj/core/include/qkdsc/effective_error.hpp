#pragma once

#include "qkdsc/attack.hpp"
#include "qkdsc/sidechannel.hpp"

namespace qkdsc {

/// Side-channel leakage recast as an inflated error rate on Bob's side.
/// r_delta is the raw one-way rate 1 - h2(q_bob) - chi_delta; it may be
/// negative and is floored only at final key-rate reporting.
struct EffectiveErrorResult {
    double q_bob = 0.0;
    double q_bob_delta = 0.0;
    double r_delta = 0.0;
};

/// Solves 1 - h2(q_bob) - chi_delta = 1 - h2(q_bob_delta) - chi for
/// q_bob_delta: the excess Holevo leakage chi_delta - chi becomes extra
/// binary entropy on Bob's channel. When h2(q_bob) + chi_delta - chi
/// exceeds 1 the inversion has no solution and q_bob_delta saturates
/// at 1/2. Rejects chi_delta < chi.
EffectiveErrorResult effective_qber(double q_bob, double chi, double chi_delta);

struct PipelineOptions {
    bool average_bases = false;
};

struct AttackPipelineResult {
    AttackResult attack;
    EffectiveErrorResult error;
};

/// End-to-end evaluation: embed the side-channel Gram matrix, run the
/// cloner, compute both Holevo values and convert the excess leakage into
/// the effective error used by the decoy-state analysis.
AttackPipelineResult attack_pipeline(const ClonerSetting& setting, const SideChannelGram& gram,
                                     const PipelineOptions& options = {});

}  // namespace qkdsc
