// memwit: run two-atom witness scenarios, figure presets and parameter sweeps.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "memwit/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIntegration = 3;

int exit_code_for(memwit::ErrorCode code) {
    switch (code) {
    case memwit::ErrorCode::ParseError:
    case memwit::ErrorCode::ValidationError:
    case memwit::ErrorCode::InvalidArgument:
        return kExitValidation;
    case memwit::ErrorCode::IntegrationDiverged:
    case memwit::ErrorCode::NoConvergence:
    case memwit::ErrorCode::NotDensityMatrix:
        return kExitIntegration;
    default:
        return kExitFailure;
    }
}

std::string optional_text(const std::optional<double>& v) {
    return v ? memwit::format_number(*v) : "none";
}

void print_summary(std::string_view label, const memwit::ScenarioResult& result) {
    std::cout << label << ": t_ew=" << optional_text(result.report.t_ew)
              << " c_ew_threshold=" << optional_text(result.report.c_ew_threshold)
              << " death_time=" << optional_text(result.death_time) << '\n';
    if (!result.report.notes.empty()) std::cout << "  note: " << result.report.notes << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic uncertainty and entanglement witness for two atoms in non-Markovian reservoirs"};
    app.require_subcommand(1);

    std::optional<double> dt_override;
    std::optional<double> tmax_override;
    app.add_option("--dt", dt_override, "Integration step in units of 1/gamma0")->check(CLI::PositiveNumber);
    app.add_option("--tmax", tmax_override, "Final time in units of 1/gamma0")->check(CLI::PositiveNumber);

    std::string config_path;
    std::string out_path;

    auto* run = app.add_subcommand("run", "Run one scenario from a JSON config");
    run->fallthrough();
    run->add_option("--config", config_path, "Scenario config (flat JSON object)")->required();
    run->add_option("--out", out_path, "CSV output path")->required();

    std::string preset_id;
    auto* preset = app.add_subcommand("preset", "Run a built-in figure preset");
    preset->fallthrough();
    preset->add_option("id", preset_id, "Preset id, e.g. fig1a_d0")->required();
    preset->add_option("--out", out_path, "CSV output path")->required();

    auto* presets = app.add_subcommand("presets", "List preset ids and their parameters");

    memwit::SweepGrid grid;
    unsigned threads = 0;
    auto* sweep = app.add_subcommand("sweep", "Sweep lambda/delta over a base config");
    sweep->fallthrough();
    sweep->add_option("--config", config_path, "Base config (flat JSON object)")->required();
    sweep->add_option("--lambda", grid.lambda, "Spectral widths applied to both reservoirs");
    sweep->add_option("--delta", grid.delta, "Detunings applied to both reservoirs");
    sweep->add_option("--lambda-b", grid.lambda_b, "Spectral widths for reservoir B only");
    sweep->add_option("--delta-b", grid.delta_b, "Detunings for reservoir B only");
    sweep->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    sweep->add_option("--out", out_path, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    auto apply_overrides = [&](memwit::ScenarioConfig& cfg) {
        if (dt_override) cfg.dt = *dt_override;
        if (tmax_override) cfg.t_max = *tmax_override;
        cfg.validate();
    };

    try {
        if (*presets) {
            for (memwit::PresetId id : memwit::all_presets()) {
                const auto cfg = memwit::preset_config(id);
                std::cout << memwit::preset_name(id) << " lambda_a=" << cfg.lambda_a << " delta_a=" << cfg.delta_a
                          << " lambda_b=" << cfg.lambda_b << " delta_b=" << cfg.delta_b << " t_max=" << cfg.t_max
                          << '\n';
            }
            return kExitOk;
        }
        if (*run) {
            auto cfg = memwit::load_config(config_path);
            apply_overrides(cfg);
            const auto result = memwit::run_scenario(cfg);
            memwit::emit_csv(result, out_path, cfg.outputs);
            print_summary(config_path, result);
            return kExitOk;
        }
        if (*preset) {
            const auto id = memwit::preset_from_name(preset_id);
            if (!id) {
                std::cerr << "error: unknown preset '" << preset_id << "' (see `memwit presets`)\n";
                return kExitValidation;
            }
            auto cfg = memwit::preset_config(*id);
            apply_overrides(cfg);
            const auto result = memwit::run_scenario(cfg);
            memwit::emit_csv(result, out_path, cfg.outputs);
            print_summary(preset_id, result);
            return kExitOk;
        }
        if (*sweep) {
            auto base = memwit::load_config(config_path);
            apply_overrides(base);
            if (grid.empty()) {
                std::cerr << "error: sweep needs at least one of --lambda, --delta, --lambda-b, --delta-b\n";
                return kExitValidation;
            }
            const auto rows = memwit::sweep(grid, base, threads);
            memwit::emit_sweep_csv(rows, out_path);
            int failed = 0;
            for (const auto& row : rows) {
                if (!row.ok) {
                    ++failed;
                    std::cerr << "row lambda_a=" << row.config.lambda_a << " delta_a=" << row.config.delta_a
                              << " lambda_b=" << row.config.lambda_b << " delta_b=" << row.config.delta_b
                              << " failed: " << row.error << '\n';
                }
            }
            std::cout << rows.size() << " rows written to " << out_path << '\n';
            return failed == 0 ? kExitOk : kExitIntegration;
        }
    } catch (const memwit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
