#include "qkdsc/effective_error.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qkdsc {

EffectiveErrorResult effective_qber(double q_bob, double chi, double chi_delta) {
    if (!(q_bob >= -1e-12 && q_bob <= 0.5 + 1e-12))
        throw std::invalid_argument("effective_qber: q_bob outside [0, 0.5]");
    q_bob = std::clamp(q_bob, 0.0, 0.5);
    if (!(chi >= 0.0))
        throw std::invalid_argument("effective_qber: chi must be nonnegative");
    if (chi_delta < chi - 1e-12)
        throw std::invalid_argument("effective_qber: chi_delta " + std::to_string(chi_delta) +
                                    " below chi " + std::to_string(chi));

    const double excess = std::max(chi_delta - chi, 0.0);
    const double entropy_arg = binary_entropy(q_bob) + excess;

    EffectiveErrorResult out;
    out.q_bob = q_bob;
    out.q_bob_delta = (entropy_arg >= 1.0) ? 0.5 : inv_binary_entropy(entropy_arg);
    out.r_delta = 1.0 - binary_entropy(q_bob) - chi_delta;
    return out;
}

AttackPipelineResult attack_pipeline(const ClonerSetting& setting, const SideChannelGram& gram,
                                     const PipelineOptions& options) {
    const SideChannelStates sc = embed_states(gram);
    AttackPipelineResult out;
    out.attack = evaluate_attack(setting, sc, options.average_bases);
    out.error = effective_qber(out.attack.q_bob, out.attack.chi, out.attack.chi_delta);
    return out;
}

}  // namespace qkdsc
