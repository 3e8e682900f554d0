#include "amoeba/report.hpp"

#include "amoeba/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace amoeba {

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

Json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round12(x);
}

Json nums(const std::vector<double>& xs) {
    Json a = Json::array();
    for (double x : xs) a.push_back(num(x));
    return a;
}

Json to_json(const MCEstimate& e) {
    Json j;
    j["mean"] = num(e.mean);
    j["std_error"] = num(e.std_error);
    j["n_trials"] = e.n_trials;
    j["n_discarded"] = e.n_discarded;
    j["discard_rate"] = num(e.discard_rate());
    j["ci95"] = {num(e.ci95.first), num(e.ci95.second)};
    j["target"] = e.target ? num(*e.target) : Json(nullptr);
    j["seed"] = e.seed;
    return j;
}

Json to_json(const TrialRecord& r) {
    Json j;
    j["trial"] = r.trial;
    if (!r.theta.empty()) j["theta"] = nums(r.theta);
    j["count"] = r.count;
    j["excluded"] = r.excluded_near_zero;
    j["discarded"] = r.discarded;
    if (r.discarded) j["reason"] = r.reason;
    if (r.solve.paths_tracked > 0) {
        j["paths"] = {{"tracked", r.solve.paths_tracked},
                      {"failed", r.solve.paths_failed},
                      {"diverged", r.solve.paths_diverged},
                      {"merged", r.solve.dedupe_merges}};
    }
    return j;
}

Json to_json(const LatticePolytope& p) {
    Json j;
    j["dim"] = p.dim();
    j["affine_dim"] = p.affine_dim();
    j["vertices"] = p.vertices();
    return j;
}

Json raster_sidecar(const RasterGrid& grid) {
    return {{"R", num(grid.R)},
            {"resolution", grid.resolution},
            {"samples", grid.samples_per_axis},
            {"area_estimate", num(grid.area_estimate)}};
}

Json RunManifest::to_json() const {
    Json j;
    j["subcommand"] = subcommand;
    j["config"] = config;
    j["master_seed"] = master_seed;
    j["version"] = kArtifactVersion;
    j["outputs"] = outputs;
    j["duration_seconds"] = num(duration_seconds);
    return j;
}

std::string json_lines(const std::vector<TrialRecord>& trials) {
    std::string out;
    for (const auto& t : trials) {
        out += to_json(t).dump();
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << contents;
    if (!out) throw Error("failed writing " + path);
}

}  // namespace amoeba
