#pragma once

#include "amoeba/amoebaviz.hpp"
#include "amoeba/estimate.hpp"
#include "amoeba/experiments.hpp"
#include "amoeba/polytope.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace amoeba {

using Json = nlohmann::json;

inline constexpr const char* kArtifactVersion = "0.1.0";

/// x rounded to 12 significant digits, so dumps diff cleanly across runs.
double round12(double x);
Json num(double x);
Json nums(const std::vector<double>& xs);

Json to_json(const MCEstimate& e);
Json to_json(const TrialRecord& r);
Json to_json(const LatticePolytope& p);
Json raster_sidecar(const RasterGrid& grid);

/// Everything needed to reproduce a CLI run; duration is the only
/// non-reproducible field and lives here alone.
struct RunManifest {
    std::string subcommand;
    Json config = Json::object();
    std::uint64_t master_seed = 0;
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;

    Json to_json() const;
};

/// One compact JSON object per line.
std::string json_lines(const std::vector<TrialRecord>& trials);

void write_file(const std::string& path, const std::string& contents);

}  // namespace amoeba
