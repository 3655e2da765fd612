#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fnls/dynamics.hpp"
#include "fnls/model.hpp"

namespace fnls {

enum class Scenario { GroundState, Evolve, Verify, Concentrate, Thresholds };

std::string scenario_name(Scenario s);
// Accepts the CLI verbs and the long forms verify-inequalities / concentration-study.
std::optional<Scenario> parse_scenario(const std::string& s);

struct InitialData {
    enum class Kind { Gaussian, ScaledGroundState, ChirpedGaussian, FromCheckpoint };
    Kind kind = Kind::Gaussian;
    double sigma = 1.0;      // amplitude * exp(-|x|^2 / (2 sigma^2))
    double amplitude = 1.0;
    double chirp_b = 0.0;    // extra factor exp(i b |x|^2)
    double factor = 1.0;     // multiple of the ground state
    std::string path;        // resolved against the config file's directory
};

std::string initial_data_name(InitialData::Kind k);

struct GroundStateSettings {
    double tol = 1e-11;
    int max_iter = 2000;
    double core_width = 0.0;
};

struct VerifySettings {
    int family_size = 50;
    double window_T = 1.0;
    int n_samples = 64;
    int sobolev_family_size = 200;
    std::vector<double> commutator_lambdas{1, 2, 4, 8};
    int commutator_n = 1024;
    double commutator_L = 32.0;
};

struct ScenarioConfig {
    std::optional<Scenario> scenario;
    ModelParams model = ModelParams::power(2, 1.5);
    int n = 256;
    double L = 12.0;
    EvolveConfig evolve;
    InitialData initial;
    GroundStateSettings groundstate;
    VerifySettings verify;
    std::string output_dir = "out";
    std::uint64_t seed = 1;
    // key -> line for every key present in the text
    std::map<std::string, int> lines;

    bool has(const std::string& key) const { return lines.count(key) != 0; }
};

// All errors are collected and thrown together as ConfigError, one
// "line N: ..." message each.
ScenarioConfig parse_config(const std::string& text, const std::string& base_dir = ".");
ScenarioConfig load_config(const std::string& path);

// Fills scenario-specific defaults for keys the file did not set.
void apply_scenario_defaults(ScenarioConfig& cfg, Scenario s);

// Every key the parser accepts, in a stable order.
const std::vector<std::string>& config_keys();

}  // namespace fnls
