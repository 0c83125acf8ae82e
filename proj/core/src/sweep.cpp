#include "qkdsc/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qkdsc {

namespace {

constexpr double kZeroRate = 1e-12;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: invalid number for '" + key + "': " + value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config: invalid boolean for '" + key + "': " + value);
}

ComplexMatrix parse_gram_values(const std::string& key, const std::string& value) {
    std::string normalized = value;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::vector<double> nums;
    double v;
    while (in >> v) nums.push_back(v);
    if (nums.size() != 32)
        throw std::invalid_argument("config: '" + key + "' needs 16 re,im pairs (32 numbers), got " +
                                    std::to_string(nums.size()));
    ComplexMatrix g(4, 4);
    for (std::size_t i = 0; i < 16; ++i)
        g(i / 4, i % 4) = Complex{nums[2 * i], nums[2 * i + 1]};
    return g;
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void ScenarioConfig::validate() const {
    channel.validate();
    if (!(sweep.step_km > 0.0)) throw std::invalid_argument("config: sweep.step must be > 0");
    if (!(sweep.start_km <= sweep.stop_km))
        throw std::invalid_argument("config: sweep.start must be <= sweep.stop");
    if (!(sweep.start_km >= 0.0)) throw std::invalid_argument("config: sweep.start must be >= 0");

    int sources = 0;
    sources += uniform_overlap.has_value();
    sources += gram.has_value();
    sources += visibility.has_value();
    if (sources > 1)
        throw std::invalid_argument(
            "config: specify at most one of sidechannel.overlap, sidechannel.gram, "
            "sidechannel.visibility");

    if (cloner_eta.has_value()) {
        if (!(*cloner_eta >= 0.0 && *cloner_eta <= std::numbers::pi / 2.0 + 1e-12))
            throw std::invalid_argument("config: cloner.eta outside [0, pi/2]");
    }
    if (cloner_target_qber.has_value()) {
        if (!(*cloner_target_qber >= 0.0 && *cloner_target_qber <= 0.5))
            throw std::invalid_argument("config: cloner.target_qber outside [0, 0.5]");
        if (cloner_eta.has_value())
            throw std::invalid_argument(
                "config: cloner.target_qber requires cloner.eta = optimal");
    }
}

SideChannelGram ScenarioConfig::resolve_gram() const {
    if (gram.has_value()) return SideChannelGram::from_matrix(*gram);
    if (uniform_overlap.has_value()) return SideChannelGram::uniform(*uniform_overlap);
    if (visibility.has_value()) {
        const double mu = visibility_mu.value_or(channel.mu);
        const Imbalance d = imbalance_from_visibility(*visibility, mu);
        return SideChannelGram::uniform(1.0 - 2.0 * d.delta);
    }
    return SideChannelGram::uniform(1.0);
}

double ScenarioConfig::resolve_cloner_eta(const SideChannelGram& g) const {
    if (cloner_eta.has_value()) return *cloner_eta;
    if (cloner_target_qber.has_value())
        return std::acos(1.0 - 2.0 * *cloner_target_qber);  // Q(eta) = (1 - cos eta)/2

    // No angle and no target: scan for the maximum-leakage setting.
    const SideChannelStates sc = embed_states(g);
    double best_eta = 0.0, best_leakage = -1.0;
    constexpr int kGrid = 101;
    for (int i = 0; i < kGrid; ++i) {
        const double eta = (std::numbers::pi / 2.0) * i / (kGrid - 1);
        const AttackResult a = evaluate_attack(ClonerSetting{eta}, sc, average_bases);
        if (a.chi_delta > best_leakage) {
            best_leakage = a.chi_delta;
            best_eta = eta;
        }
    }
    return best_eta;
}

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "channel.alpha") cfg.channel.alpha_db_per_km = parse_double(key, value);
        else if (key == "channel.eta_bob") cfg.channel.eta_bob = parse_double(key, value);
        else if (key == "channel.y0") cfg.channel.y0 = parse_double(key, value);
        else if (key == "channel.e0") cfg.channel.e0 = parse_double(key, value);
        else if (key == "channel.e_det") cfg.channel.e_det = parse_double(key, value);
        else if (key == "channel.mu") cfg.channel.mu = parse_double(key, value);
        else if (key == "channel.f") cfg.channel.f = parse_double(key, value);
        else if (key == "cloner.eta") {
            if (value == "optimal") cfg.cloner_eta.reset();
            else cfg.cloner_eta = parse_double(key, value);
        }
        else if (key == "cloner.target_qber") cfg.cloner_target_qber = parse_double(key, value);
        else if (key == "sidechannel.overlap") cfg.uniform_overlap = parse_double(key, value);
        else if (key == "sidechannel.gram") cfg.gram = parse_gram_values(key, value);
        else if (key == "sidechannel.visibility") cfg.visibility = parse_double(key, value);
        else if (key == "sidechannel.visibility_mu") cfg.visibility_mu = parse_double(key, value);
        else if (key == "method") {
            if (value == "efer") cfg.method = Method::EffectiveError;
            else if (value == "gllp") cfg.method = Method::Gllp;
            else if (value == "both") cfg.method = Method::Both;
            else throw std::invalid_argument("config: method must be efer, gllp or both, got " +
                                             value);
        }
        else if (key == "conservative_emu") cfg.conservative_emu = parse_bool(key, value);
        else if (key == "average_bases") cfg.average_bases = parse_bool(key, value);
        else if (key == "sweep.start") cfg.sweep.start_km = parse_double(key, value);
        else if (key == "sweep.stop") cfg.sweep.stop_km = parse_double(key, value);
        else if (key == "sweep.step") cfg.sweep.step_km = parse_double(key, value);
        else if (key == "output") cfg.output_path = value;
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::vector<std::string> sweep_columns(Method method) {
    std::vector<std::string> cols = {"length"};
    cols.push_back("rate_reference");
    if (method != Method::Gllp) cols.push_back("rate_effective_error");
    if (method != Method::EffectiveError) cols.push_back("rate_gllp");
    cols.insert(cols.end(), {"q_bob", "q_bob_delta", "chi", "chi_delta", "e1", "e_mu"});
    return cols;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& config) {
    config.validate();

    const SideChannelGram gram = config.resolve_gram();
    const double eta = config.resolve_cloner_eta(gram);
    const AttackPipelineResult pipeline =
        attack_pipeline(ClonerSetting{eta}, gram, PipelineOptions{config.average_bases});
    const Imbalance delta = imbalance_from_gram(gram);

    const double q_bob = pipeline.attack.q_bob;
    const double q_eff = pipeline.error.q_bob_delta;
    const double q_emu = config.conservative_emu ? q_eff : q_bob;

    std::vector<SweepRow> rows;
    const double span = config.sweep.stop_km - config.sweep.start_km;
    const std::size_t count = static_cast<std::size_t>(std::floor(span / config.sweep.step_km + 1e-9)) + 1;
    rows.reserve(count);

    for (std::size_t i = 0; i < count; ++i) {
        const double length = config.sweep.start_km + static_cast<double>(i) * config.sweep.step_km;
        ChannelParams p = config.channel;
        p.length_km = length;
        try {
            SweepRow row;
            row.length_km = length;
            row.q_bob = q_bob;
            row.q_bob_delta = q_eff;
            row.chi = pipeline.attack.chi;
            row.chi_delta = pipeline.attack.chi_delta;

            const RatePoint reference = key_rate_decoy(p, 0.0, 0.0);
            row.rate_reference = reference.rate;

            const RatePoint efer = key_rate_decoy(p, q_eff, q_emu);
            row.e1 = efer.e1;
            row.e_mu = efer.e_mu;
            if (config.method != Method::Gllp) row.rate_effective_error = efer.rate;
            if (config.method != Method::EffectiveError)
                row.rate_gllp = key_rate_gllp(p, delta, q_bob, q_bob).rate;

            rows.push_back(row);
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep failed at length " + format_value(length) +
                                     " km: " + e.what());
        }
    }
    return rows;
}

namespace {

std::optional<double> column_value(const SweepRow& row, const std::string& column) {
    if (column == "rate_reference") return row.rate_reference;
    if (column == "rate_effective_error") return row.rate_effective_error;
    if (column == "rate_gllp") return row.rate_gllp;
    throw std::invalid_argument("zero_key_distance: unknown column '" + column + "'");
}

}  // namespace

std::optional<double> zero_key_distance(const std::vector<SweepRow>& rows,
                                        const std::string& column) {
    if (rows.empty()) throw std::invalid_argument("zero_key_distance: no rows");
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& row : rows) {
        const auto v = column_value(row, column);
        if (!v.has_value())
            throw std::invalid_argument("zero_key_distance: column '" + column +
                                        "' not present in this sweep");
        values.push_back(*v);
    }

    if (values.front() < kZeroRate) return rows.front().length_km;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (values[i] >= kZeroRate) continue;
        const double v0 = values[i - 1], v1 = values[i];
        const double l0 = rows[i - 1].length_km, l1 = rows[i].length_km;
        const double t = (v0 - kZeroRate) / (v0 - v1);  // v0 >= threshold > v1
        return l0 + t * (l1 - l0);
    }
    return std::nullopt;
}

void emit_csv(const std::vector<SweepRow>& rows, Method method, std::ostream& os) {
    const auto cols = sweep_columns(method);
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
    os << "\n";

    for (const auto& row : rows) {
        std::vector<double> vals;
        vals.push_back(row.length_km);
        vals.push_back(row.rate_reference);
        if (method != Method::Gllp) vals.push_back(row.rate_effective_error.value_or(0.0));
        if (method != Method::EffectiveError) vals.push_back(row.rate_gllp.value_or(0.0));
        vals.insert(vals.end(),
                    {row.q_bob, row.q_bob_delta, row.chi, row.chi_delta, row.e1, row.e_mu});
        for (std::size_t c = 0; c < vals.size(); ++c)
            os << (c ? "," : "") << format_value(vals[c]);
        os << "\n";
    }
}

void emit_csv(const std::vector<SweepRow>& rows, Method method, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path + " for writing");
    emit_csv(rows, method, out);
    out.flush();
    if (!out) throw std::runtime_error("emit_csv: write to " + path + " failed");
}

std::vector<std::pair<double, double>> fig3_table(double mu, const std::vector<double>& grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double v : grid) out.emplace_back(v, imbalance_from_visibility(v, mu).delta);
    return out;
}

const std::vector<double>& preset_imbalances() {
    static const std::vector<double> grid = {0.001, 0.005, 0.01, 0.05};
    return grid;
}

double fig2_target_qber() { return 0.05; }

namespace {

ScenarioConfig preset_base(double delta) {
    ScenarioConfig cfg;
    cfg.uniform_overlap = 1.0 - 2.0 * delta;
    cfg.method = Method::Both;
    cfg.sweep = SweepRange{0.0, 200.0, 1.0};
    return cfg;
}

}  // namespace

std::vector<std::pair<double, ScenarioConfig>> fig1_scenarios() {
    std::vector<std::pair<double, ScenarioConfig>> out;
    for (double d : preset_imbalances()) {
        ScenarioConfig cfg = preset_base(d);
        cfg.cloner_eta = 0.0;
        out.emplace_back(d, std::move(cfg));
    }
    return out;
}

std::vector<std::pair<double, ScenarioConfig>> fig2_scenarios() {
    std::vector<std::pair<double, ScenarioConfig>> out;
    for (double d : preset_imbalances()) {
        ScenarioConfig cfg = preset_base(d);
        cfg.cloner_eta.reset();
        cfg.cloner_target_qber = fig2_target_qber();
        out.emplace_back(d, std::move(cfg));
    }
    return out;
}

}  // namespace qkdsc
