#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "mmaf/embed.hpp"
#include "mmaf/field_sim.hpp"

namespace mmaf {

struct RunOptions {
    std::string subcommand;  // simulate | estimate | select | embed | bound | forecast | validate
    std::filesystem::path config_path;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
    int threads = 1;
};

// Parsed view of the sections shared by several subcommands.
struct PipelineConfig {
    nlohmann::json raw;  // effective config after overrides
    std::string hash;
    std::uint64_t rng_seed = 0;
    std::filesystem::path out_dir;
    SimConfig sim;
};

PipelineConfig load_pipeline_config(const nlohmann::json& raw, const RunOptions& opts);

SeedDistribution parse_seed(const nlohmann::json& j);
SelectionRule parse_rule(const std::string& name);

// Runs one subcommand. Artifacts go to the output directory; a JSON summary
// (or a JSON error object) is written to `out`. Returns the exit status.
int run(const RunOptions& opts, std::ostream& out);

}  // namespace mmaf
