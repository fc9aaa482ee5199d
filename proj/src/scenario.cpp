#include "psdec/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "psdec/analysis.hpp"
#include "psdec/heatmap.hpp"
#include "psdec/io.hpp"
#include "psdec/povm.hpp"
#include "psdec/version.hpp"

namespace psdec {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

double require_number(const json& j, const std::string& where, const char* key,
                      double fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) throw ConfigError(where + ": missing field '" + key + "'");
        return fallback;
    }
    if (!j.at(key).is_number())
        throw ConfigError(where + ": field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

std::string require_string(const json& j, const std::string& where, const char* key,
                           const std::string& fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) throw ConfigError(where + ": missing field '" + key + "'");
        return fallback;
    }
    if (!j.at(key).is_string())
        throw ConfigError(where + ": field '" + key + "' must be a string");
    return j.at(key).get<std::string>();
}

PipelineStep parse_step(const json& j, int index) {
    const std::string where = "pipeline[" + std::to_string(index) + "]";
    if (!j.is_object()) throw ConfigError(where + ": step must be an object");
    PipelineStep step;
    step.op = require_string(j, where, "op", "", true);
    if (step.op == "evolve") {
        step.mode = require_string(j, where, "mode", "position");
        if (step.mode != "position" && step.mode != "phasespace")
            throw ConfigError(where + ": mode must be position or phasespace");
        step.gamma = require_number(j, where, "gamma", 0.0, true);
        step.t = require_number(j, where, "t", 0.0, true);
        step.omega = require_number(j, where, "omega", 0.0);
        step.mass = require_number(j, where, "mass", 1.0);
        step.sigma = require_number(j, where, "sigma", 1.0);
        step.steps = static_cast<int>(require_number(j, where, "steps", 64));
        if (step.gamma < 0.0) throw ConfigError(where + ": gamma must be >= 0");
        if (step.t < 0.0) throw ConfigError(where + ": t must be >= 0");
        if (step.steps < 1) throw ConfigError(where + ": steps must be >= 1");
    } else if (step.op == "povm_apply") {
        step.m = require_number(j, where, "m", 1.0, true);
        if (step.m < 1.0 || step.m != std::floor(step.m))
            throw ConfigError(where + ": povm_apply m must be a positive integer");
    } else if (step.op == "povm_smooth") {
        step.m = require_number(j, where, "m", 0.5, true);
        if (!(step.m > 0.0)) throw ConfigError(where + ": povm_smooth m must be > 0");
    } else if (step.op == "transform") {
        step.to = require_string(j, where, "to", "wigner", true);
        if (step.to != "wigner" && step.to != "husimi")
            throw ConfigError(where + ": transform target must be wigner or husimi");
    } else if (step.op == "analyze") {
        // no parameters
    } else {
        throw ConfigError(where + ": unknown op '" + step.op + "'");
    }
    return step;
}

json step_to_json(const PipelineStep& s) {
    json j{{"op", s.op}};
    if (s.op == "evolve") {
        j["mode"] = s.mode;
        j["gamma"] = s.gamma;
        j["t"] = s.t;
        j["omega"] = s.omega;
        j["mass"] = s.mass;
        j["sigma"] = s.sigma;
        j["steps"] = s.steps;
    } else if (s.op == "povm_apply" || s.op == "povm_smooth") {
        j["m"] = s.m;
    } else if (s.op == "transform") {
        j["to"] = s.to;
    }
    return j;
}

WaveFunction build_initial_state(const InitialStateConfig& cfg, const Grid1D& grid) {
    if (cfg.kind == "coherent")
        return coherent_state(CoherentLabel{cfg.x0, cfg.p0, cfg.sigma}, grid);
    if (cfg.kind == "cat_position") {
        const double a = 0.5 * cfg.separation;
        return cat_state(CoherentLabel{cfg.x0 + a, cfg.p0, cfg.sigma},
                         CoherentLabel{cfg.x0 - a, cfg.p0, cfg.sigma}, cfg.phase, grid);
    }
    if (cfg.kind == "cat_momentum") {
        const double a = 0.5 * cfg.separation;
        return cat_state(CoherentLabel{cfg.x0, cfg.p0 + a, cfg.sigma},
                         CoherentLabel{cfg.x0, cfg.p0 - a, cfg.sigma}, cfg.phase, grid);
    }
    if (cfg.kind == "fock") return fock_state(cfg.fock_n, grid);
    throw ConfigError("initial_state: unknown kind '" + cfg.kind + "'");
}

EvolutionSpec to_spec(const PipelineStep& step, double t) {
    EvolutionSpec spec;
    spec.gamma = step.gamma;
    spec.omega = step.omega;
    spec.mass = step.mass;
    spec.sigma = step.sigma;
    spec.mode = step.mode == "phasespace" ? DecoherenceMode::phase_space
                                          : DecoherenceMode::position;
    spec.t = t;
    spec.n_steps = std::max(1, static_cast<int>(std::lround(
                                   step.steps * (step.t > 0 ? t / step.t : 1.0))));
    return spec;
}

class ScenarioRunner {
public:
    explicit ScenarioRunner(const ScenarioConfig& config) : cfg_(config) {}

    ScenarioResult run() {
        namespace fs = std::filesystem;
        fs::create_directories(cfg_.outputs.directory);

        set_warning_sink([this](const std::string& msg) { warnings_.push_back(msg); });
        try {
            execute();
        } catch (...) {
            set_warning_sink(nullptr);
            throw;
        }
        set_warning_sink(nullptr);
        write_manifest();
        return result_;
    }

private:
    void execute() {
        const Grid1D grid = make_grid(cfg_.grid.n, cfg_.grid.half_width);
        const WaveFunction psi = build_initial_state(cfg_.initial_state, grid);
        state_ = wigner_from_density(density_from_pure(psi));

        pending_ = cfg_.outputs.snapshot_times;
        if (pending_.empty()) pending_.push_back(0.0);
        clock_ = 0.0;
        emit_due_snapshots();

        for (std::size_t k = 0; k < cfg_.pipeline.size(); ++k) {
            const PipelineStep& step = cfg_.pipeline[k];
            try {
                apply_step(step);
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                throw std::runtime_error("pipeline step " + std::to_string(k) + " (" +
                                         step.op + ") failed: " + e.what());
            }
        }
        if (!pending_.empty())
            throw ConfigError("snapshot_times extend past the total evolve time");
    }

    void apply_step(const PipelineStep& step) {
        if (step.op == "evolve") {
            const double end = clock_ + step.t;
            while (!pending_.empty() && pending_.front() <= end + 1e-12) {
                advance(step, std::min(pending_.front(), end) - clock_);
                emit_snapshot(pending_.front());
                pending_.erase(pending_.begin());
            }
            advance(step, end - clock_);
        } else if (step.op == "povm_apply") {
            DensityMatrix rho = density_from_wigner(state_);
            state_ = wigner_from_density(povm_channel(rho, static_cast<int>(step.m)));
        } else if (step.op == "povm_smooth") {
            state_ = povm_smooth_wigner(state_, step.m);
        } else if (step.op == "transform") {
            emit_representation_ = step.to;
        } else if (step.op == "analyze") {
            const std::string path = artifact_path("analysis", clock_, ".json");
            io::write_metrics_json(path, phase_space_stats(state_));
            result_.artifacts.push_back({clock_, "", "", path});
        }
    }

    void advance(const PipelineStep& step, double dt) {
        if (dt <= 1e-14) return;
        state_ = evolve_composed(state_, to_spec(step, dt));
        clock_ += dt;
    }

    void emit_due_snapshots() {
        while (!pending_.empty() && pending_.front() <= clock_ + 1e-12) {
            emit_snapshot(pending_.front());
            pending_.erase(pending_.begin());
        }
    }

    void emit_snapshot(double time) {
        ScenarioArtifact artifact;
        artifact.time = time;
        RealField field = as_field(state_);
        if (emit_representation_ == "husimi")
            field = gaussian_convolve(field, 0.5, 0.5);

        const auto has = [this](const char* fmt) {
            return std::find(cfg_.outputs.formats.begin(), cfg_.outputs.formats.end(),
                             fmt) != cfg_.outputs.formats.end();
        };
        if (has("csv")) {
            artifact.csv = artifact_path("snapshot", time, ".csv");
            io::write_field_csv(artifact.csv, field);
        }
        if (has("png")) {
            artifact.png = artifact_path("snapshot", time, ".png");
            render_heatmap(field, artifact.png, HeatmapStyle{cfg_.outputs.colormap, 1});
        }
        if (has("json")) {
            artifact.metrics = artifact_path("metrics", time, ".json");
            io::write_metrics_json(artifact.metrics, phase_space_stats(state_));
        }
        result_.artifacts.push_back(std::move(artifact));
    }

    std::string artifact_path(const char* stem, double time, const char* ext) const {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s_t%.6f%s", stem, time, ext);
        return (std::filesystem::path(cfg_.outputs.directory) / buf).string();
    }

    void write_manifest() {
        json artifacts = json::array();
        for (const auto& a : result_.artifacts)
            artifacts.push_back({{"time", a.time},
                                 {"csv", a.csv},
                                 {"png", a.png},
                                 {"metrics", a.metrics}});
        json manifest{{"scenario", cfg_.name},
                      {"generator", std::string("psdec ") + kVersion},
                      {"config", json::parse(scenario_to_json(cfg_))},
                      {"artifacts", artifacts},
                      {"warnings", warnings_}};
        result_.manifest_path =
            (std::filesystem::path(cfg_.outputs.directory) / "manifest.json").string();
        std::ofstream out(result_.manifest_path);
        if (!out) throw std::runtime_error("cannot write " + result_.manifest_path);
        out << manifest.dump(2) << "\n";
    }

    ScenarioConfig cfg_;
    WignerFunction state_;
    std::vector<double> pending_;
    double clock_ = 0.0;
    std::string emit_representation_ = "wigner";
    std::vector<std::string> warnings_;
    ScenarioResult result_;
};

ScenarioConfig figure_scenario(const std::string& name, const std::string& state_kind,
                               const std::string& mode, double gamma, double omega) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.initial_state.kind = state_kind;
    cfg.initial_state.separation = 6.0;
    PipelineStep evolve;
    evolve.op = "evolve";
    evolve.mode = mode;
    evolve.gamma = gamma;
    evolve.omega = omega;
    evolve.mass = omega > 0.0 ? 1.0 : 1.0;
    evolve.t = 8.0 * kPi;
    evolve.steps = 512;
    cfg.pipeline.push_back(evolve);
    cfg.outputs.snapshot_times = {0.0, kPi / 4.0, 8.0 * kPi};
    cfg.outputs.directory = "out/" + name;
    return cfg;
}

}  // namespace

ScenarioConfig parse_scenario_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");

    ScenarioConfig cfg;
    cfg.name = require_string(j, "config", "name", cfg.name);
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        cfg.grid.n = static_cast<int>(require_number(g, "grid", "n", cfg.grid.n));
        cfg.grid.half_width =
            require_number(g, "grid", "half_width", cfg.grid.half_width);
        if (cfg.grid.n < 8) throw ConfigError("grid: n must be >= 8");
        if (!(cfg.grid.half_width > 0.0))
            throw ConfigError("grid: half_width must be positive");
    }

    if (!j.contains("initial_state"))
        throw ConfigError("config: missing field 'initial_state'");
    {
        const json& s = j.at("initial_state");
        cfg.initial_state.kind = require_string(s, "initial_state", "kind", "", true);
        cfg.initial_state.x0 = require_number(s, "initial_state", "x0", 0.0);
        cfg.initial_state.p0 = require_number(s, "initial_state", "p0", 0.0);
        cfg.initial_state.separation =
            require_number(s, "initial_state", "separation", 6.0);
        cfg.initial_state.phase = require_number(s, "initial_state", "phase", 0.0);
        cfg.initial_state.sigma = require_number(s, "initial_state", "sigma", 1.0);
        cfg.initial_state.fock_n =
            static_cast<int>(require_number(s, "initial_state", "n", 0.0));
    }

    if (!j.contains("pipeline") || !j.at("pipeline").is_array() ||
        j.at("pipeline").empty())
        throw ConfigError("config: pipeline must be a nonempty array");
    int index = 0;
    for (const json& step : j.at("pipeline"))
        cfg.pipeline.push_back(parse_step(step, index++));

    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        cfg.outputs.directory =
            require_string(o, "outputs", "directory", cfg.outputs.directory);
        cfg.outputs.colormap =
            require_string(o, "outputs", "colormap", cfg.outputs.colormap);
        if (o.contains("formats")) {
            if (!o.at("formats").is_array())
                throw ConfigError("outputs: formats must be an array");
            cfg.outputs.formats = o.at("formats").get<std::vector<std::string>>();
            for (const auto& f : cfg.outputs.formats)
                if (f != "csv" && f != "png" && f != "json")
                    throw ConfigError("outputs: unknown format '" + f + "'");
        }
        if (o.contains("snapshot_times")) {
            if (!o.at("snapshot_times").is_array())
                throw ConfigError("outputs: snapshot_times must be an array");
            cfg.outputs.snapshot_times =
                o.at("snapshot_times").get<std::vector<double>>();
        }
    }
    if (!std::is_sorted(cfg.outputs.snapshot_times.begin(),
                        cfg.outputs.snapshot_times.end()))
        throw ConfigError("outputs: snapshot_times must be sorted ascending");
    return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_scenario_json(text);
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
    json steps = json::array();
    for (const auto& s : cfg.pipeline) steps.push_back(step_to_json(s));
    json j{{"name", cfg.name},
           {"seed", cfg.seed},
           {"grid", {{"n", cfg.grid.n}, {"half_width", cfg.grid.half_width}}},
           {"initial_state",
            {{"kind", cfg.initial_state.kind},
             {"x0", cfg.initial_state.x0},
             {"p0", cfg.initial_state.p0},
             {"separation", cfg.initial_state.separation},
             {"phase", cfg.initial_state.phase},
             {"sigma", cfg.initial_state.sigma},
             {"n", cfg.initial_state.fock_n}}},
           {"pipeline", steps},
           {"outputs",
            {{"directory", cfg.outputs.directory},
             {"formats", cfg.outputs.formats},
             {"colormap", cfg.outputs.colormap},
             {"snapshot_times", cfg.outputs.snapshot_times}}}};
    return j.dump(2);
}

std::vector<std::string> builtin_scenario_names() {
    return {"fig1-top", "fig1-middle", "fig1-bottom",
            "fig2-top", "fig2-middle", "fig2-bottom"};
}

ScenarioConfig builtin_scenario(const std::string& name) {
    // Position-monitoring dynamics at gamma = 0.2, phase-space monitoring at
    // gamma = 0.1; rows differ in the initial cat orientation and whether the
    // harmonic term is on. Cat separation 6 and equal weights are this
    // project's reproduction choice, echoed in the manifest.
    if (name == "fig1-top") return figure_scenario(name, "cat_position", "position", 0.2, 0.0);
    if (name == "fig1-middle") return figure_scenario(name, "cat_momentum", "position", 0.2, 0.0);
    if (name == "fig1-bottom") return figure_scenario(name, "cat_momentum", "position", 0.2, 1.0);
    if (name == "fig2-top") return figure_scenario(name, "cat_position", "phasespace", 0.1, 0.0);
    if (name == "fig2-middle") return figure_scenario(name, "cat_momentum", "phasespace", 0.1, 0.0);
    if (name == "fig2-bottom") return figure_scenario(name, "cat_momentum", "phasespace", 0.1, 1.0);
    throw ConfigError("unknown scenario '" + name + "'; see `scenario list`");
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
    ScenarioRunner runner(config);
    return runner.run();
}

}  // namespace psdec
