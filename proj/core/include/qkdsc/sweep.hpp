#pragma once

#include "qkdsc/decoy.hpp"
#include "qkdsc/effective_error.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qkdsc {

enum class Method { EffectiveError, Gllp, Both };

/// Distance grid in km; step must be positive and start <= stop.
struct SweepRange {
    double start_km = 0.0;
    double stop_km = 200.0;
    double step_km = 1.0;
};

/// Everything one sweep needs. The side channel is specified exactly one
/// way: a uniform overlap, a full 4x4 Gram matrix, or a measured HOM
/// visibility (converted to a uniform-overlap model via the imbalance
/// bound). Leaving all three unset means a trivial side channel (overlap 1).
struct ScenarioConfig {
    ChannelParams channel;

    /// Cloner angle in radians; unset means "optimal": pick the angle from
    /// cloner_target_qber when given, otherwise scan for maximum leakage.
    std::optional<double> cloner_eta = 0.0;
    std::optional<double> cloner_target_qber;

    std::optional<double> uniform_overlap;
    std::optional<ComplexMatrix> gram;
    std::optional<double> visibility;
    std::optional<double> visibility_mu;

    Method method = Method::Both;

    /// When set, the error-correction term E_mu also uses the effective
    /// error instead of the physically observed one.
    bool conservative_emu = false;
    bool average_bases = false;

    SweepRange sweep;
    std::string output_path;

    void validate() const;

    /// Side-channel Gram matrix implied by the configuration.
    SideChannelGram resolve_gram() const;

    /// Cloner angle implied by the configuration (resolves "optimal").
    double resolve_cloner_eta(const SideChannelGram& gram) const;
};

/// Parse the flat key = value configuration format ('#' starts a comment).
/// Unknown keys and malformed values are reported with the offending key.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

/// One distance point of a sweep. The two method columns are present only
/// when the corresponding method was requested.
struct SweepRow {
    double length_km = 0.0;
    double rate_reference = 0.0;
    std::optional<double> rate_effective_error;
    std::optional<double> rate_gllp;
    double q_bob = 0.0;
    double q_bob_delta = 0.0;
    double chi = 0.0;
    double chi_delta = 0.0;
    double e1 = 0.0;
    double e_mu = 0.0;
};

/// Column names in emission order.
std::vector<std::string> sweep_columns(Method method);

/// Evaluate the scenario over its distance grid. Deterministic; rows are
/// ordered by length. Numerical failures carry the offending length in the
/// exception message.
std::vector<SweepRow> run_sweep(const ScenarioConfig& config);

/// Smallest length at which `column` drops below 1e-12, linearly
/// interpolated between bracketing rows; nullopt when never crossed.
/// Unknown or absent columns are rejected.
std::optional<double> zero_key_distance(const std::vector<SweepRow>& rows,
                                        const std::string& column);

/// CSV with one header row and 12 significant digits per value. Identical
/// rows produce byte-identical output.
void emit_csv(const std::vector<SweepRow>& rows, Method method, const std::string& path);
void emit_csv(const std::vector<SweepRow>& rows, Method method, std::ostream& os);

/// Visibility -> imbalance table over a grid of HOM visibilities.
std::vector<std::pair<double, double>> fig3_table(double mu, const std::vector<double>& grid);

/// Figure presets: the scenario grid behind the reference plots. Each entry
/// pairs an imbalance value with a ready-to-run scenario (uniform overlap
/// 1 - 2 delta, 0..200 km in 1 km steps, both methods).
std::vector<std::pair<double, ScenarioConfig>> fig1_scenarios();
std::vector<std::pair<double, ScenarioConfig>> fig2_scenarios();

/// Imbalance grid used by the figure presets.
const std::vector<double>& preset_imbalances();

/// Observed-QBER target of the fig2 preset cloner.
double fig2_target_qber();

}  // namespace qkdsc
