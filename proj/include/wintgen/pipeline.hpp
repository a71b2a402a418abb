#pragma once

// Batch pipelines behind the command line front end: configuration, the
// individual stages, and JSON reports with named tolerance checks.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wintgen/curve_gen.hpp"
#include "wintgen/envelope.hpp"

namespace wintgen {

std::map<std::string, double> default_tolerances();

struct PipelineConfig {
    int m = 3;
    std::string fixture = "enneper5";           // used when `weierstrass` is empty
    std::optional<WeierstrassData> weierstrass;
    ZGrid grid;
    int fiberSamples = 8;
    double fdStep = 1e-3;
    int outerFactor = 4;
    double centerStep = 0.025;                  // lattice spacing of the FD center path
    double perturbation = 0.0;                  // smooth_bump amplitude applied to the envelope
    std::uint64_t seed = 7;
    int trials = 1000;
    std::optional<std::pair<Vec, Vec>> poles;
    std::map<std::string, double> tolerances = default_tolerances();
    std::vector<std::string> outputs;           // empty: every export

    // Missing fields keep their defaults. Throws ConfigError naming the field.
    static PipelineConfig from_json(const nlohmann::json& doc);
    static PipelineConfig from_text(const std::string& text);
    nlohmann::json to_json() const;
    void validate() const;

    WeierstrassData data() const;
    PolePair pole_pair() const;
    double tol(const std::string& name) const;
    bool wants(const std::string& output) const;
};

struct RunResult {
    nlohmann::json report;
    bool pass = true;
    std::map<std::string, std::string> files;  // file name -> contents
};

inline const std::vector<std::string>& pipeline_commands() {
    static const std::vector<std::string> cmds = {"generate", "lift",    "construct", "check-wintgen",
                                                  "gauss-check", "centers", "roundtrip", "all"};
    return cmds;
}

// Deterministic for identical configurations. Throws ConfigError on an
// unknown command.
RunResult run_pipeline(const std::string& command, const PipelineConfig& cfg);

}  // namespace wintgen
