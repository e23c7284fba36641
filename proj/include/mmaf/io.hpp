#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmaf/embed.hpp"
#include "mmaf/learn.hpp"
#include "mmaf/raster.hpp"

namespace mmaf::io {

using nlohmann::json;
namespace fs = std::filesystem;

// Provenance stamped on every artifact.
struct Provenance {
    std::string config_hash;
    std::uint64_t rng_seed = 0;
};

// 64-bit FNV-1a of the compact dump of `j`, as 16 hex digits. Object keys
// are sorted, so equal configs hash equally.
std::string config_hash(const json& j);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

void write_json(const fs::path& path, const json& j);
json read_json(const fs::path& path);

std::string format_double(double v);

// Header line "# cube key=value ...", then "# time_index,p0,..." and one row
// per frame.
void write_cube_csv(const fs::path& path, const RasterCube& cube, const Provenance& prov);
RasterCube read_cube_csv(const fs::path& path);
json cube_sidecar(const RasterCube& cube, const Provenance& prov);

void write_training_set_csv(const fs::path& path, const TrainingSet& ts, const Provenance& prov);

struct ForecastRow {
    int pixel = 0;
    EnsembleForecast forecast;
    double truth = 0.0;  // NaN when no test frame exists
};

void write_forecast_csv(const fs::path& path, const std::vector<ForecastRow>& rows, const Provenance& prov);
std::string forecast_svg(const std::vector<ForecastRow>& rows, const std::string& title);

}  // namespace mmaf::io
