#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "refnet/infer.hpp"
#include "refnet/society.hpp"

namespace refnet {

namespace fs = std::filesystem;

/// Everything one reference-model test needs: input files, the model and its
/// constraints, the statistic, chain settings and the seed.
struct PipelineConfig {
    // Input paths as written in the config; relative ones resolve against
    // base_dir.
    std::optional<std::string> adjacency, gbi, events, attributes;
    /// Observed network source: "adjacency", "gbi" or "events". Empty picks
    /// the model's natural source.
    std::string network;
    std::string model = "node_label";
    std::vector<std::string> constraints;
    nlohmann::json statistic = nlohmann::json::object();
    std::size_t burn_in = 500;
    std::size_t thin = 10;
    std::size_t replicates = 999;
    std::size_t histogram_bins = 30;
    std::optional<std::uint64_t> seed;
    std::string output = "results.json";
    fs::path base_dir = ".";

    fs::path resolve(const std::string& path) const;
};

PipelineConfig pipeline_config_from_json(const nlohmann::json& j, const fs::path& base_dir);
nlohmann::json to_json(const PipelineConfig& cfg);

/// Model names understood by run_test.
const std::vector<std::string>& model_names();

struct TestOutcome {
    ReferenceRun run;
    std::optional<ChainDiagnostics> diagnostics;
    std::optional<double> acceptance_rate;
    Histogram histogram;
    nlohmann::json results;  // the results.json document
};

/// Loads the data, checks model/statistic compatibility, then computes the
/// observed statistic and its references. Writes nothing.
TestOutcome run_test(const PipelineConfig& cfg);

/// run_test plus an atomic write of results.json to `cfg.output`.
TestOutcome cmd_test(const PipelineConfig& cfg);

struct SimulateOutput {
    SocietyData society;
    InteractionEvents dominance, affiliation;
    std::vector<fs::path> files;
};

/// Simulates a society and the interactions of `focal_group` (1-based), then
/// writes attributes.csv, gbi_<group>.csv, events_dominance.csv,
/// events_affiliation.csv, adjacency.csv, group_net.csv and manifest.json.
SimulateOutput cmd_simulate(const SocietyConfig& cfg, int focal_group, const fs::path& out_dir,
                            std::uint64_t seed);

}  // namespace refnet
