#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psdec/lindblad.hpp"

namespace psdec {

/// Raised for malformed configs and CLI input; maps to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GridConfig {
    int n = 256;
    double half_width = 10.0;
};

struct InitialStateConfig {
    std::string kind = "coherent";  // coherent | cat_position | cat_momentum | fock
    double x0 = 0.0, p0 = 0.0;
    double separation = 6.0;  // center distance for cat states
    double phase = 0.0;
    double sigma = 1.0;
    int fock_n = 0;
};

struct PipelineStep {
    std::string op;  // evolve | povm_apply | povm_smooth | transform | analyze
    // evolve
    std::string mode = "position";  // position | phasespace
    double gamma = 0.0, t = 0.0, omega = 0.0, mass = 1.0, sigma = 1.0;
    int steps = 64;
    // povm_apply / povm_smooth
    double m = 1.0;
    // transform
    std::string to = "wigner";  // wigner | husimi
};

struct OutputConfig {
    std::string directory = "out";
    std::vector<std::string> formats = {"csv", "png", "json"};
    std::string colormap = "diverging";
    std::vector<double> snapshot_times;
};

struct ScenarioConfig {
    std::string name = "scenario";
    GridConfig grid;
    InitialStateConfig initial_state;
    std::vector<PipelineStep> pipeline;
    OutputConfig outputs;
    std::uint64_t seed = 1;
};

ScenarioConfig parse_scenario_json(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);
std::string scenario_to_json(const ScenarioConfig& config);

std::vector<std::string> builtin_scenario_names();
ScenarioConfig builtin_scenario(const std::string& name);

struct ScenarioArtifact {
    double time = 0.0;
    std::string csv, png, metrics;
};

struct ScenarioResult {
    std::vector<ScenarioArtifact> artifacts;
    std::string manifest_path;
};

/// Runs the pipeline, emitting a Wigner CSV, heatmap, and metrics JSON per
/// snapshot time plus a manifest sufficient to re-run the scenario.
ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace psdec
