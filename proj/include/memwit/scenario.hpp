// scenario.hpp: configuration, figure presets, scenario runs, sweeps and CSV output
// behind the memwit command-line tool.
//
// Config files are flat JSON objects. Rates are multiples of gamma0 and times are
// multiples of 1/gamma0; the computation runs in those units, so gamma0 itself only
// fixes the unit and does not change any output column.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "memwit/dynamics.hpp"
#include "memwit/witness.hpp"

namespace memwit {

enum class InitialState { BellPhiPlus };

enum class OutputField { Mu, Lhs, Concurrence, FA, FB, Rho };

std::string_view to_string(OutputField field) noexcept;

struct ScenarioConfig {
    double gamma0 = 1.0;
    double lambda_a = 0.0;
    double lambda_b = 0.0;
    double delta_a = 0.0;
    double delta_b = 0.0;
    double t_max = 0.0;
    double dt = 1e-2;
    std::size_t sample_every = 1;
    InitialState initial_state = InitialState::BellPhiPlus;
    std::vector<OutputField> outputs{OutputField::Mu, OutputField::Lhs, OutputField::Concurrence,
                                     OutputField::FA, OutputField::FB};

    // Throws ValidationError naming the offending key.
    void validate() const;

    ReservoirParams reservoir_a() const { return {lambda_a, delta_a, 1.0}; }
    ReservoirParams reservoir_b() const { return {lambda_b, delta_b, 1.0}; }

    bool operator==(const ScenarioConfig&) const = default;
};

// Parses a flat JSON object. Unknown keys are rejected; lambda_a, lambda_b and
// t_max are required. Throws ParseError on malformed text and ValidationError on
// bad values or types.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Figure presets

enum class PresetId {
    fig1a_d0, fig1a_d12, fig1a_d16,
    fig1b_l5, fig1b_l01, fig1b_l008,
    fig2a_db0, fig2a_db2, fig2a_db4,
    fig2b_l5, fig2b_l01, fig2b_l005,
    fig3a_d0, fig3a_d1, fig3a_d2,
    fig3b_db0, fig3b_db1, fig3b_db2,
    fig4a_d0, fig4a_d12, fig4a_d16,
    fig4b_l5, fig4b_l01, fig4b_l005,
};

const std::vector<PresetId>& all_presets();
std::string_view preset_name(PresetId id) noexcept;
std::optional<PresetId> preset_from_name(std::string_view name);
ScenarioConfig preset_config(PresetId id);

// ---------------------------------------------------------------------------
// Runs

struct ScenarioResult {
    Trajectory trajectory;
    WitnessReport report;
    std::optional<double> death_time;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Shortest round-trip decimal text; integral values keep a trailing ".0".
std::string format_number(double value);

// Writes the sample table to path and the witness report to "<path>.report".
// Throws EmptyTrajectory for an empty trajectory and IoError when a file cannot be
// written.
void emit_csv(const ScenarioResult& result, const std::filesystem::path& path,
              const std::vector<OutputField>& outputs = ScenarioConfig{}.outputs);

std::string csv_header(const std::vector<OutputField>& outputs);

// "key: value" lines for t_ew, c_ew_threshold, death_time, crossing_found, mu_series_max.
std::string report_text(const ScenarioResult& result);

// ---------------------------------------------------------------------------
// Sweeps

// Each non-empty list is one axis of the Cartesian product. lambda and delta set
// both reservoirs; lambda_b and delta_b, when given, then override reservoir B.
struct SweepGrid {
    std::vector<double> lambda;
    std::vector<double> delta;
    std::vector<double> lambda_b;
    std::vector<double> delta_b;

    bool empty() const noexcept {
        return lambda.empty() && delta.empty() && lambda_b.empty() && delta_b.empty();
    }
};

struct SweepRow {
    ScenarioConfig config;
    bool ok = false;
    WitnessReport report;
    std::optional<double> death_time;
    std::string error; // set when ok is false
};

// Rows come back in grid order whatever the thread count; threads == 0 picks the
// hardware concurrency.
std::vector<SweepRow> sweep(const SweepGrid& grid, const ScenarioConfig& base, unsigned threads = 0);

void emit_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

} // namespace memwit
