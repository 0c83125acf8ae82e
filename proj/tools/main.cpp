// Command-line front end: distance sweeps for the decoy-state BB84 rate
// model with a passive source side channel, figure presets, and zero-key
// distance reporting. All numeric output goes to CSV files; the console
// gets a short summary.

#include "qkdsc/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace qkdsc;

Method parse_method(const std::string& name) {
    if (name == "efer") return Method::EffectiveError;
    if (name == "gllp") return Method::Gllp;
    if (name == "both") return Method::Both;
    throw CLI::ValidationError("--method", "must be one of efer, gllp, both");
}

std::string preset_output_path(const std::string& base, double delta) {
    char suffix[48];
    std::snprintf(suffix, sizeof(suffix), "_delta%g.csv", delta);
    std::string stem = base;
    if (stem.size() >= 4 && stem.substr(stem.size() - 4) == ".csv")
        stem.erase(stem.size() - 4);
    return stem + suffix;
}

void print_zero_distances(const std::vector<SweepRow>& rows, Method method) {
    for (const auto& column : sweep_columns(method)) {
        if (column.rfind("rate_", 0) != 0) continue;
        const auto z = zero_key_distance(rows, column);
        std::cout << column << ": ";
        if (z.has_value())
            std::cout << *z << " km\n";
        else
            std::cout << "none\n";
    }
}

int run_preset(const std::vector<std::pair<double, ScenarioConfig>>& scenarios,
               const std::string& out) {
    for (const auto& [delta, config] : scenarios) {
        const auto rows = run_sweep(config);
        const std::string path = preset_output_path(out, delta);
        emit_csv(rows, config.method, path);
        std::cout << "delta=" << delta << " -> " << path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decoy-state BB84 key rates with a passive source side channel"};
    app.require_subcommand(1);

    std::string config_path, out_path, method_name;

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a configured distance sweep");
    sweep_cmd->add_option("--config", config_path, "Scenario configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", out_path, "Output CSV path (overrides config)");
    sweep_cmd->add_option("--method", method_name, "efer, gllp or both (overrides config)");

    auto* fig1_cmd = app.add_subcommand(
        "fig1", "Preset: side-channel-only scenarios (cloner off), one CSV per imbalance");
    fig1_cmd->add_option("--out", out_path, "Output CSV base path")->required();

    auto* fig2_cmd = app.add_subcommand(
        "fig2", "Preset: cloning plus side channel, one CSV per imbalance");
    fig2_cmd->add_option("--out", out_path, "Output CSV base path")->required();

    double fig3_mu = 0.5;
    auto* fig3_cmd =
        app.add_subcommand("fig3", "Preset: HOM visibility to imbalance mapping table");
    fig3_cmd->add_option("--out", out_path, "Output CSV path")->required();
    fig3_cmd->add_option("--mu", fig3_mu, "Mean photon number of the pulses");

    auto* zero_cmd = app.add_subcommand(
        "zero-distance", "Run a configured sweep and report zero-key distances");
    zero_cmd->add_option("--config", config_path, "Scenario configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    zero_cmd->add_option("--out", out_path, "Also write the sweep CSV here");
    zero_cmd->add_option("--method", method_name, "efer, gllp or both (overrides config)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed() || zero_cmd->parsed()) {
            ScenarioConfig config = parse_config_file(config_path);
            if (!method_name.empty()) config.method = parse_method(method_name);
            if (!out_path.empty()) config.output_path = out_path;

            const auto rows = run_sweep(config);
            if (sweep_cmd->parsed()) {
                if (config.output_path.empty())
                    throw std::runtime_error(
                        "no output path: set 'output' in the config or pass --out");
                emit_csv(rows, config.method, config.output_path);
                std::cout << rows.size() << " rows -> " << config.output_path << "\n";
            } else {
                if (!config.output_path.empty()) {
                    emit_csv(rows, config.method, config.output_path);
                    std::cout << rows.size() << " rows -> " << config.output_path << "\n";
                }
                print_zero_distances(rows, config.method);
            }
            return 0;
        }

        if (fig1_cmd->parsed()) return run_preset(fig1_scenarios(), out_path);
        if (fig2_cmd->parsed()) return run_preset(fig2_scenarios(), out_path);

        if (fig3_cmd->parsed()) {
            std::vector<double> grid;
            constexpr int kPoints = 101;
            grid.reserve(kPoints);
            for (int i = 0; i < kPoints; ++i) grid.push_back(0.5 * i / (kPoints - 1));
            const auto table = fig3_table(fig3_mu, grid);

            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
            out << "visibility,delta\n";
            char buf[64];
            for (const auto& [v, d] : table) {
                std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", v, d);
                out << buf;
            }
            std::cout << table.size() << " rows -> " << out_path << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
