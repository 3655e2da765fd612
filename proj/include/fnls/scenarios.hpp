#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fnls/config.hpp"
#include "fnls/diagnostics.hpp"
#include "fnls/ground_state.hpp"

namespace fnls {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitResolutionLost = 3;
inline constexpr int kExitNumerical = 4;

struct ScenarioResult {
    int exit_code = kExitOk;
    std::string summary;
    std::vector<std::string> artifacts;  // paths relative to the output directory
};

// Runs one scenario into out_dir (created if needed). Module errors propagate.
ScenarioResult run_scenario(const ScenarioConfig& cfg, Scenario s, const std::string& out_dir,
                            std::ostream* log = nullptr);

// run_scenario with errors mapped to exit codes and reported on `err`.
int run_scenario_guarded(const ScenarioConfig& cfg, Scenario s, const std::string& out_dir, std::ostream& err,
                         std::ostream* log = nullptr);

std::string csv_header();
std::string csv_row(const DiagnosticsRecord& r);

// gs is required for scaled_groundstate data
ComplexField make_initial_data(const InitialData& in, const GridPtr& grid, const ModelParams& p,
                               const GroundState* gs);

std::string code_version();

}  // namespace fnls
