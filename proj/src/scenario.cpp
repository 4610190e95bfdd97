#include "memwit/scenario.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace memwit {

using json = nlohmann::json;

std::string_view to_string(OutputField field) noexcept {
    switch (field) {
    case OutputField::Mu: return "mu";
    case OutputField::Lhs: return "lhs";
    case OutputField::Concurrence: return "concurrence";
    case OutputField::FA: return "f_a";
    case OutputField::FB: return "f_b";
    case OutputField::Rho: return "rho";
    }
    return "unknown";
}

namespace {

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
    throw Error(ErrorCode::ValidationError, key + ": " + why);
}

void require_finite(const std::string& key, double v) {
    if (!std::isfinite(v)) invalid(key, "must be finite");
}

} // namespace

void ScenarioConfig::validate() const {
    require_finite("gamma0", gamma0);
    require_finite("lambda_a", lambda_a);
    require_finite("lambda_b", lambda_b);
    require_finite("delta_a", delta_a);
    require_finite("delta_b", delta_b);
    require_finite("t_max", t_max);
    require_finite("dt", dt);
    if (!(gamma0 > 0.0)) invalid("gamma0", "must be > 0");
    if (!(lambda_a > 0.0)) invalid("lambda_a", "must be > 0");
    if (!(lambda_b > 0.0)) invalid("lambda_b", "must be > 0");
    if (!(delta_a >= 0.0)) invalid("delta_a", "must be >= 0");
    if (!(delta_b >= 0.0)) invalid("delta_b", "must be >= 0");
    if (!(t_max > 0.0)) invalid("t_max", "must be > 0");
    if (!(dt > 0.0)) invalid("dt", "must be > 0");
    if (dt > t_max) invalid("dt", "must not exceed t_max");
    if (sample_every == 0) invalid("sample_every", "must be >= 1");
    if (outputs.empty()) invalid("outputs", "must list at least one field");
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

constexpr std::array<std::string_view, 10> kConfigKeys{
    "gamma0", "lambda_a", "lambda_b", "delta_a", "delta_b",
    "t_max",  "dt",       "sample_every", "initial_state", "outputs"};

double number_field(const json& doc, const std::string& key, double fallback, bool required) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        if (required) invalid(key, "is required");
        return fallback;
    }
    if (!it->is_number()) invalid(key, "must be a number");
    return it->get<double>();
}

OutputField output_from_name(const std::string& name) {
    for (OutputField f : {OutputField::Mu, OutputField::Lhs, OutputField::Concurrence, OutputField::FA,
                          OutputField::FB, OutputField::Rho}) {
        if (to_string(f) == name) return f;
    }
    invalid("outputs", "unknown field '" + name + "'");
}

} // namespace

ScenarioConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
            invalid(key, "unknown key");
        }
    }

    ScenarioConfig cfg;
    cfg.gamma0 = number_field(doc, "gamma0", cfg.gamma0, false);
    cfg.lambda_a = number_field(doc, "lambda_a", 0.0, true);
    cfg.lambda_b = number_field(doc, "lambda_b", 0.0, true);
    cfg.delta_a = number_field(doc, "delta_a", cfg.delta_a, false);
    cfg.delta_b = number_field(doc, "delta_b", cfg.delta_b, false);
    cfg.t_max = number_field(doc, "t_max", 0.0, true);
    cfg.dt = number_field(doc, "dt", cfg.dt, false);

    if (const auto it = doc.find("sample_every"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<long long>() < 1) {
            invalid("sample_every", "must be a positive integer");
        }
        cfg.sample_every = it->get<std::size_t>();
    }
    if (const auto it = doc.find("initial_state"); it != doc.end()) {
        if (!it->is_string() || it->get<std::string>() != "bell_phi_plus") {
            invalid("initial_state", "supported value is \"bell_phi_plus\"");
        }
    }
    if (const auto it = doc.find("outputs"); it != doc.end()) {
        if (!it->is_array()) invalid("outputs", "must be an array of field names");
        cfg.outputs.clear();
        for (const auto& item : *it) {
            if (!item.is_string()) invalid("outputs", "entries must be strings");
            const OutputField f = output_from_name(item.get<std::string>());
            if (std::find(cfg.outputs.begin(), cfg.outputs.end(), f) != cfg.outputs.end()) {
                invalid("outputs", "duplicate field '" + item.get<std::string>() + "'");
            }
            cfg.outputs.push_back(f);
        }
        // Column order is fixed regardless of listing order.
        std::sort(cfg.outputs.begin(), cfg.outputs.end());
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// ---------------------------------------------------------------------------
// Presets

namespace {

struct PresetEntry {
    PresetId id;
    std::string_view name;
    double lambda_a, delta_a, lambda_b, delta_b, t_max;
};

// Figure-panel captions; t_max values bracket every feature read off each panel.
constexpr std::array<PresetEntry, 24> kPresets{{
    {PresetId::fig1a_d0, "fig1a_d0", 0.1, 0.0, 0.1, 0.0, 12.0},
    {PresetId::fig1a_d12, "fig1a_d12", 0.1, 1.2, 0.1, 1.2, 40.0},
    {PresetId::fig1a_d16, "fig1a_d16", 0.1, 1.6, 0.1, 1.6, 70.0},
    {PresetId::fig1b_l5, "fig1b_l5", 5.0, 1.0, 5.0, 1.0, 3.0},
    {PresetId::fig1b_l01, "fig1b_l01", 0.1, 1.0, 0.1, 1.0, 25.0},
    {PresetId::fig1b_l008, "fig1b_l008", 0.08, 1.0, 0.08, 1.0, 40.0},
    {PresetId::fig2a_db0, "fig2a_db0", 0.1, 0.0, 0.1, 0.0, 10.0},
    {PresetId::fig2a_db2, "fig2a_db2", 0.1, 0.0, 0.1, 2.0, 10.0},
    {PresetId::fig2a_db4, "fig2a_db4", 0.1, 0.0, 0.1, 4.0, 10.0},
    {PresetId::fig2b_l5, "fig2b_l5", 5.0, 0.0, 5.0, 2.0, 10.0},
    {PresetId::fig2b_l01, "fig2b_l01", 0.1, 0.0, 0.1, 2.0, 10.0},
    {PresetId::fig2b_l005, "fig2b_l005", 0.05, 0.0, 0.05, 2.0, 10.0},
    {PresetId::fig3a_d0, "fig3a_d0", 0.1, 0.0, 5.0, 0.0, 3.0},
    {PresetId::fig3a_d1, "fig3a_d1", 0.1, 1.0, 5.0, 1.0, 3.0},
    {PresetId::fig3a_d2, "fig3a_d2", 0.1, 2.0, 5.0, 2.0, 3.0},
    {PresetId::fig3b_db0, "fig3b_db0", 0.1, 0.0, 5.0, 0.0, 3.0},
    {PresetId::fig3b_db1, "fig3b_db1", 0.1, 0.0, 5.0, 1.0, 3.0},
    {PresetId::fig3b_db2, "fig3b_db2", 0.1, 0.0, 5.0, 2.0, 3.0},
    {PresetId::fig4a_d0, "fig4a_d0", 0.1, 0.0, 0.1, 0.0, 50.0},
    {PresetId::fig4a_d12, "fig4a_d12", 0.1, 1.2, 0.1, 1.2, 50.0},
    {PresetId::fig4a_d16, "fig4a_d16", 0.1, 1.6, 0.1, 1.6, 50.0},
    {PresetId::fig4b_l5, "fig4b_l5", 5.0, 1.0, 5.0, 1.0, 50.0},
    {PresetId::fig4b_l01, "fig4b_l01", 0.1, 1.0, 0.1, 1.0, 50.0},
    {PresetId::fig4b_l005, "fig4b_l005", 0.05, 1.0, 0.05, 1.0, 50.0},
}};

const PresetEntry& preset_entry(PresetId id) {
    for (const auto& e : kPresets) {
        if (e.id == id) return e;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown preset");
}

} // namespace

const std::vector<PresetId>& all_presets() {
    static const std::vector<PresetId> ids = [] {
        std::vector<PresetId> out;
        for (const auto& e : kPresets) out.push_back(e.id);
        return out;
    }();
    return ids;
}

std::string_view preset_name(PresetId id) noexcept {
    for (const auto& e : kPresets) {
        if (e.id == id) return e.name;
    }
    return "unknown";
}

std::optional<PresetId> preset_from_name(std::string_view name) {
    for (const auto& e : kPresets) {
        if (e.name == name) return e.id;
    }
    return std::nullopt;
}

ScenarioConfig preset_config(PresetId id) {
    const PresetEntry& e = preset_entry(id);
    ScenarioConfig cfg;
    cfg.lambda_a = e.lambda_a;
    cfg.delta_a = e.delta_a;
    cfg.lambda_b = e.lambda_b;
    cfg.delta_b = e.delta_b;
    cfg.t_max = e.t_max;
    return cfg;
}

// ---------------------------------------------------------------------------
// Runs and output

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    SystemState initial = bell_initial();
    PropagateOptions options;
    options.sample_every = cfg.sample_every;
    ScenarioResult result;
    result.trajectory = propagate(initial, cfg.reservoir_a(), cfg.reservoir_b(), cfg.t_max, cfg.dt, options);
    observe(result.trajectory);
    result.report = witness_report(result.trajectory);
    result.death_time = entanglement_death_time(result.trajectory);
    return result;
}

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    std::string out(buf.data(), end);
    if (ec != std::errc{}) return "nan";
    if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
    return out;
}

std::string csv_header(const std::vector<OutputField>& outputs) {
    std::string header = "t";
    for (OutputField f : outputs) {
        switch (f) {
        case OutputField::Mu: header += ",mu"; break;
        case OutputField::Lhs: header += ",lhs"; break;
        case OutputField::Concurrence: header += ",concurrence"; break;
        case OutputField::FA: header += ",f_a_re,f_a_im"; break;
        case OutputField::FB: header += ",f_b_re,f_b_im"; break;
        case OutputField::Rho:
            for (int r = 1; r <= 4; ++r)
                for (int c = 1; c <= 4; ++c) {
                    const std::string base = ",rho" + std::to_string(r) + std::to_string(c);
                    header += base + "_re" + base + "_im";
                }
            break;
        }
    }
    return header;
}

namespace {

std::string optional_text(const std::optional<double>& v) { return v ? format_number(*v) : "none"; }

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

} // namespace

std::string report_text(const ScenarioResult& result) {
    const WitnessReport& r = result.report;
    std::string text;
    text += "t_ew: " + optional_text(r.t_ew) + "\n";
    text += "c_ew_threshold: " + optional_text(r.c_ew_threshold) + "\n";
    text += "death_time: " + optional_text(result.death_time) + "\n";
    text += std::string("crossing_found: ") + (r.crossing_found ? "true" : "false") + "\n";
    text += "mu_series_max: " + format_number(r.mu_series_max) + "\n";
    return text;
}

void emit_csv(const ScenarioResult& result, const std::filesystem::path& path,
              const std::vector<OutputField>& outputs) {
    const Trajectory& traj = result.trajectory;
    if (traj.empty()) throw Error(ErrorCode::EmptyTrajectory, "nothing to write");

    std::string text = csv_header(outputs) + "\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const Sample& s = traj.samples[i];
        text += format_number(traj.times[i]);
        auto put = [&](double v) {
            text += ',';
            text += format_number(v);
        };
        for (OutputField f : outputs) {
            switch (f) {
            case OutputField::Mu: put(s.mu); break;
            case OutputField::Lhs: put(s.lhs); break;
            case OutputField::Concurrence: put(s.concurrence); break;
            case OutputField::FA: put(s.f_a.real()); put(s.f_a.imag()); break;
            case OutputField::FB: put(s.f_b.real()); put(s.f_b.imag()); break;
            case OutputField::Rho:
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c) {
                        put(traj.states[i].rho(r, c).real());
                        put(traj.states[i].rho(r, c).imag());
                    }
                break;
            }
        }
        text += '\n';
    }
    write_file(path, text);
    std::filesystem::path report_path = path;
    report_path += ".report";
    write_file(report_path, report_text(result));
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<SweepRow> sweep(const SweepGrid& grid, const ScenarioConfig& base, unsigned threads) {
    if (grid.empty()) throw Error(ErrorCode::ValidationError, "sweep grid is empty");

    auto axis = [](const std::vector<double>& values) {
        return values.empty() ? std::vector<std::optional<double>>{std::nullopt}
                              : std::vector<std::optional<double>>(values.begin(), values.end());
    };
    std::vector<SweepRow> rows;
    for (const auto& lambda : axis(grid.lambda)) {
        for (const auto& delta : axis(grid.delta)) {
            for (const auto& lambda_b : axis(grid.lambda_b)) {
                for (const auto& delta_b : axis(grid.delta_b)) {
                    SweepRow row;
                    row.config = base;
                    if (lambda) row.config.lambda_a = row.config.lambda_b = *lambda;
                    if (delta) row.config.delta_a = row.config.delta_b = *delta;
                    if (lambda_b) row.config.lambda_b = *lambda_b;
                    if (delta_b) row.config.delta_b = *delta_b;
                    rows.push_back(std::move(row));
                }
            }
        }
    }

    auto run_row = [](SweepRow& row) {
        try {
            ScenarioResult result = run_scenario(row.config);
            row.report = std::move(result.report);
            row.death_time = result.death_time;
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < rows.size(); i = next++) run_row(rows[i]);
            });
        }
    }
    return rows;
}

void emit_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    std::string text =
        "lambda_a,delta_a,lambda_b,delta_b,status,t_ew,c_ew_threshold,death_time,crossing_found,mu_series_max,error\n";
    for (const SweepRow& row : rows) {
        const ScenarioConfig& c = row.config;
        text += format_number(c.lambda_a) + ',' + format_number(c.delta_a) + ',' + format_number(c.lambda_b) +
                ',' + format_number(c.delta_b) + ',';
        if (row.ok) {
            text += "ok," + optional_text(row.report.t_ew) + ',' + optional_text(row.report.c_ew_threshold) +
                    ',' + optional_text(row.death_time) + ',' + (row.report.crossing_found ? "true" : "false") +
                    ',' + format_number(row.report.mu_series_max) + ",\n";
        } else {
            std::string msg = row.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            text += "failed,,,,,," + msg + "\n";
        }
    }
    write_file(path, text);
}

} // namespace memwit
