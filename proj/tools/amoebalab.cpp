// amoebalab: command-line runner for the random-amoeba experiments.

#include "amoeba/amoebaviz.hpp"
#include "amoeba/errors.hpp"
#include "amoeba/experiments.hpp"
#include "amoeba/polytope.hpp"
#include "amoeba/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

using namespace amoeba;

namespace {

struct Settings {
    int n = 1;
    std::vector<int> degrees;
    int trials = 1000;
    std::uint64_t seed = 0;
    std::vector<std::string> theta;
    std::string support_file;
    std::string poly_file;
    std::string out;
    std::string config;
    int k = 1;
    bool doubled = false;
    int workers = 1;
    int dilation = 2;
    int curves = 0;
    int points = 1000;
    double R = 6.0;
    int resolution = 600;
    int samples = 1200;
    std::string mode = "center";
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_option(CLI::App* sub, Settings& s, const std::string& key) {
    if (key == "n") sub->add_option("--n", s.n, "half-dimension (1 or 2)")->check(CLI::Range(1, 2));
    else if (key == "degrees") sub->add_option("--degrees", s.degrees, "degrees, comma separated")->delimiter(',');
    else if (key == "trials") sub->add_option("--trials", s.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    else if (key == "seed") sub->add_option("--seed", s.seed, "master seed");
    else if (key == "theta")
        sub->add_option("--theta", s.theta, "fixed theta as comma separated angles, or 'uniform'");
    else if (key == "support-file") sub->add_option("--support-file", s.support_file, "support JSON");
    else if (key == "poly-file") sub->add_option("--poly-file", s.poly_file, "polynomial in text form");
    else if (key == "out") sub->add_option("--out", s.out, "output directory");
    else if (key == "k") sub->add_option("--k", s.k, "number of variables")->check(CLI::Range(1, 3));
    else if (key == "doubled") sub->add_flag("--doubled", s.doubled, "repeat each polytope twice");
    else if (key == "workers") sub->add_option("--workers", s.workers, "worker threads")->check(CLI::PositiveNumber);
    else if (key == "dilation") sub->add_option("--dilation", s.dilation, "dilation factor")->check(CLI::PositiveNumber);
    else if (key == "curves") sub->add_option("--curves", s.curves, "random curves")->check(CLI::PositiveNumber);
    else if (key == "points") sub->add_option("--points", s.points, "sample points")->check(CLI::PositiveNumber);
    else if (key == "R") sub->add_option("--R", s.R, "log window half-width")->check(CLI::PositiveNumber);
    else if (key == "resolution")
        sub->add_option("--resolution", s.resolution, "pixels per axis")->check(CLI::PositiveNumber);
    else if (key == "samples")
        sub->add_option("--samples", s.samples, "z1 samples per axis")->check(CLI::PositiveNumber);
    else if (key == "mode")
        sub->add_option("--mode", s.mode, "raster occupancy rule")->check(CLI::IsMember({"center", "hits"}));
    else throw std::logic_error("unknown option key " + key);
}

/// Flat `key = value` lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        if (key.empty() || value.empty()) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": empty key or value");
        }
        out.emplace_back(key, value);
    }
    return out;
}

/// Config entries fill options not given on the command line.
void apply_config(CLI::App* sub, const std::string& path) {
    for (const auto& [key, value] : read_config(path)) {
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config") throw UsageError("unknown config key '" + key + "'");
        if (opt->count() > 0) continue;
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError("config key '" + key + "': " + e.what());
        }
    }
}

std::vector<double> parse_angles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad theta component '" + item + "'");
        }
    }
    return out;
}

/// Empty result means uniform theta. A single "0" expands to the zero vector.
std::vector<double> theta_value(const std::string& text, int m) {
    if (text == "uniform") return {};
    if (text == "0") return std::vector<double>(static_cast<std::size_t>(m), 0.0);
    auto angles = parse_angles(text);
    if (angles.size() != static_cast<std::size_t>(m)) {
        throw UsageError("theta needs " + std::to_string(m) + " angles, got " + std::to_string(angles.size()));
    }
    return angles;
}

struct SupportFile {
    std::vector<std::vector<ExponentVector>> polytopes;
    std::vector<double> variances;
};

SupportFile read_support(const std::string& path) {
    if (path.empty()) throw UsageError("--support-file is required");
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read support file " + path);
    SupportFile s;
    try {
        const Json j = Json::parse(in);
        if (j.contains("points")) {
            s.polytopes.push_back(j.at("points").get<std::vector<ExponentVector>>());
        } else if (j.contains("polytopes")) {
            s.polytopes = j.at("polytopes").get<std::vector<std::vector<ExponentVector>>>();
        } else {
            throw UsageError(path + ": expected a \"points\" or \"polytopes\" array");
        }
        if (j.contains("variances")) s.variances = j.at("variances").get<std::vector<double>>();
    } catch (const Json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
    for (const auto& p : s.polytopes) {
        if (p.empty()) throw UsageError(path + ": empty point list");
    }
    if (!s.variances.empty() && s.variances.size() != s.polytopes.front().size()) {
        throw UsageError(path + ": variances must match the points");
    }
    return s;
}

LatticePolytope polytope_of(const std::vector<ExponentVector>& pts) {
    std::vector<LatticePoint> lp;
    for (const auto& p : pts) lp.emplace_back(p.begin(), p.end());
    return LatticePolytope::hull(pts.front().size(), lp);
}

Json exact_or_real(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<long long>(r);
    return num(x);
}

RasterMode raster_mode(const std::string& name) {
    return name == "hits" ? RasterMode::root_hits : RasterMode::center_coverage;
}

const char* verdict(bool ok) {
    return ok ? "pass" : "fail";
}

ExperimentConfig experiment_config(const Settings& s) {
    ExperimentConfig c;
    c.n = s.n;
    c.degrees = s.degrees;
    c.n_trials = s.trials;
    c.master_seed = s.seed;
    c.workers = s.workers;
    return c;
}

void require_degrees(const Settings& s, std::size_t count) {
    if (s.degrees.size() != count) {
        throw UsageError("--degrees needs " + std::to_string(count) + " value(s)");
    }
}

Json fiber_summary(const FiberRun& run) {
    return {{"multivolume", to_json(run.multivolume)}, {"fiber_count", to_json(run.count)}};
}

struct Outcome {
    Json summary;
    std::string verdict;  // "pass", "fail" or empty for no check
    std::vector<TrialRecord> trials;
    std::vector<std::pair<std::string, RasterGrid>> images;
};

Outcome run_subcommand(const std::string& name, const Settings& s) {
    Outcome o;
    if (name == "multivolume") {
        require_degrees(s, static_cast<std::size_t>(s.n));
        ExperimentConfig c = experiment_config(s);
        if (s.theta.size() > 1) throw UsageError("multivolume takes at most one --theta");
        if (!s.theta.empty()) {
            c.theta = theta_value(s.theta[0], 2 * s.n);
            c.theta_mode = c.theta.empty() ? ThetaMode::uniform : ThetaMode::fixed;
        }
        const FiberRun run = run_multivolume(c);
        o.summary = fiber_summary(run);
        o.summary["mean"] = num(run.multivolume.mean);
        o.summary["target"] = num(*run.multivolume.target);
        o.verdict = verdict(run.multivolume.within(4.0));
        o.trials = run.trials;
    } else if (name == "theta-invariance") {
        require_degrees(s, static_cast<std::size_t>(s.n));
        if (s.theta.size() != 2) throw UsageError("theta-invariance needs --theta exactly twice");
        const int m = 2 * s.n;
        const auto r = run_theta_invariance(experiment_config(s), theta_value(s.theta[0], m),
                                            theta_value(s.theta[1], m));
        o.summary = {{"first", fiber_summary(r.first)}, {"second", fiber_summary(r.second)}, {"z", num(r.z)}};
        o.verdict = verdict(r.z < 4.0);
        o.trials = r.first.trials;
        o.trials.insert(o.trials.end(), r.second.trials.begin(), r.second.trials.end());
    } else if (name == "shub-smale") {
        require_degrees(s, static_cast<std::size_t>(s.k));
        const auto r = run_shub_smale(s.k, s.degrees, s.trials, s.seed, s.workers);
        o.summary = {{"estimate", to_json(r.estimate)}, {"mean", num(r.estimate.mean)},
                     {"target", num(*r.estimate.target)}};
        o.verdict = verdict(r.estimate.within(4.0));
        o.trials = r.trials;
    } else if (name == "toric-scaling") {
        const SupportFile sf = read_support(s.support_file);
        ExperimentConfig c = experiment_config(s);
        const auto r = run_toric_scaling(sf.polytopes.front(), sf.variances, s.dilation, c);
        o.summary = {{"base", fiber_summary(r.base)},
                     {"dilated", fiber_summary(r.dilated)},
                     {"ratio", num(r.ratio)},
                     {"ratio_se", num(r.ratio_se)},
                     {"target", s.dilation}};
        o.verdict = verdict(r.within(4.0));
        o.trials = r.base.trials;
        o.trials.insert(o.trials.end(), r.dilated.trials.begin(), r.dilated.trials.end());
    } else if (name == "bounds") {
        require_degrees(s, static_cast<std::size_t>(s.n));
        const RasterParams raster{s.R, s.resolution, s.samples, raster_mode(s.mode)};
        const auto r = check_bounds(experiment_config(s), s.curves > 0 ? s.curves : 50, raster);
        o.summary = fiber_summary(r.multivolume);
        o.summary["alpha"] = exact_or_real(r.alpha);
        o.summary["mikhalkin_bound"] = num(r.mikhalkin_bound);
        o.summary["multivolume_ok"] = r.multivolume_ok;
        if (r.raster_area) {
            o.summary["raster_area"] = to_json(*r.raster_area);
            o.summary["lebesgue_bound"] = num(r.lebesgue_bound);
            o.summary["area_vs_lebesgue_ok"] = r.area_vs_lebesgue_ok;
            o.summary["area_vs_multivolume_ok"] = r.area_vs_multivolume_ok;
        }
        o.verdict = verdict(r.pass());
        o.trials = r.multivolume.trials;
    } else if (name == "jacobian-check") {
        const int curves = s.curves > 0 ? s.curves : 20;
        const int per_curve = (s.points + curves - 1) / curves;
        const auto r = run_jacobian_check(curves, per_curve, s.seed, s.workers);
        o.summary = {{"points", r.points},
                     {"max_rel_err_analytic", num(r.max_rel_err_analytic)},
                     {"max_rel_err_fd", num(r.max_rel_err_fd)}};
        o.verdict = verdict(r.max_rel_err_analytic <= 1e-10 && r.max_rel_err_fd <= 1e-4);
    } else if (name == "raster") {
        MultiPoly f(2);
        if (!s.poly_file.empty()) {
            std::ifstream in(s.poly_file);
            if (!in) throw UsageError("cannot read " + s.poly_file);
            std::stringstream text;
            text << in.rdbuf();
            f = from_text(text.str(), 2);
        } else {
            require_degrees(s, 1);
            const auto spec = EnsembleSpec::dense(3, s.degrees[0], Field::complex);
            f = dehomogenize(sample_dense_complex(spec, SeedContext{s.seed, 0, "curve"}), 0);
        }
        const RasterGrid grid = raster_amoeba(f, s.R, s.resolution, s.samples, s.workers, raster_mode(s.mode));
        o.summary = raster_sidecar(grid);
        o.summary["skipped_slices"] = grid.slices_skipped;
        o.images.emplace_back("amoeba", grid);
    } else if (name == "mixed-volume") {
        const SupportFile sf = read_support(s.support_file);
        std::vector<LatticePolytope> ps;
        for (const auto& pts : sf.polytopes) ps.push_back(polytope_of(pts));
        o.summary["polytopes"] = Json::array();
        for (const auto& p : ps) o.summary["polytopes"].push_back(to_json(p));
        if (s.doubled) {
            const AlphaResult a = mikhalkin_alpha(ps);
            o.summary["alpha"] = exact_or_real(a.alpha);
            o.summary["degenerate"] = a.degenerate;
        } else {
            // A single polytope stands for m copies of itself.
            if (ps.size() == 1) ps.assign(ps.front().dim(), ps.front());
            o.summary["mixed_volume"] = exact_or_real(mixed_volume(ps));
        }
    }
    return o;
}

struct Subcommand {
    const char* name;
    const char* help;
    std::vector<std::string> keys;
};

const std::vector<Subcommand>& subcommands() {
    static const std::vector<Subcommand> list = {
        {"multivolume", "expected multivolume by fiber counting",
         {"n", "degrees", "trials", "seed", "theta", "workers", "out"}},
        {"theta-invariance", "fixed-theta fiber means at two angles",
         {"n", "degrees", "trials", "seed", "theta", "workers", "out"}},
        {"shub-smale", "expected number of real zeros", {"k", "degrees", "trials", "seed", "workers", "out"}},
        {"toric-scaling", "sparse ensemble multivolume under dilation",
         {"n", "support-file", "dilation", "trials", "seed", "workers", "out"}},
        {"bounds", "multivolume and raster area against their upper bounds",
         {"n", "degrees", "trials", "seed", "workers", "curves", "R", "resolution", "samples", "mode", "out"}},
        {"jacobian-check", "Log and Arg Jacobian determinants on random curves",
         {"curves", "points", "seed", "workers", "out"}},
        {"raster", "rasterize the amoeba of a plane curve",
         {"poly-file", "degrees", "seed", "R", "resolution", "samples", "mode", "workers", "out"}},
        {"mixed-volume", "mixed volume of lattice polytopes", {"support-file", "doubled", "out"}},
    };
    return list;
}

Json settings_json(const Settings& s, const std::vector<std::string>& keys) {
    Json j = Json::object();
    for (const auto& k : keys) {
        if (k == "n") j[k] = s.n;
        else if (k == "degrees") j[k] = s.degrees;
        else if (k == "trials") j[k] = s.trials;
        else if (k == "seed") j[k] = s.seed;
        else if (k == "theta") j[k] = s.theta;
        else if (k == "support-file") j[k] = s.support_file;
        else if (k == "poly-file") j[k] = s.poly_file;
        else if (k == "k") j[k] = s.k;
        else if (k == "doubled") j[k] = s.doubled;
        else if (k == "workers") j[k] = s.workers;
        else if (k == "dilation") j[k] = s.dilation;
        else if (k == "curves") j[k] = s.curves;
        else if (k == "points") j[k] = s.points;
        else if (k == "R") j[k] = num(s.R);
        else if (k == "resolution") j[k] = s.resolution;
        else if (k == "samples") j[k] = s.samples;
        else if (k == "mode") j[k] = s.mode;
    }
    // workers never changes results, so it stays out of the reproducible echo
    j.erase("workers");
    j.erase("out");
    return j;
}

void write_outputs(const std::string& name, const Settings& s, const std::vector<std::string>& keys,
                   const Outcome& o, double seconds) {
    namespace fs = std::filesystem;
    fs::create_directories(s.out);
    RunManifest manifest;
    manifest.subcommand = name;
    manifest.config = settings_json(s, keys);
    manifest.master_seed = s.seed;
    auto path = [&](const std::string& file) { return (fs::path(s.out) / file).string(); };

    write_file(path("summary.json"), o.summary.dump(2) + "\n");
    manifest.outputs.push_back("summary.json");
    if (!o.trials.empty()) {
        write_file(path("trials.jsonl"), json_lines(o.trials));
        manifest.outputs.push_back("trials.jsonl");
    }
    for (const auto& [stem, grid] : o.images) {
        write_pgm(grid, path(stem + ".pgm"));
        write_file(path(stem + ".json"), raster_sidecar(grid).dump(2) + "\n");
        manifest.outputs.push_back(stem + ".pgm");
        manifest.outputs.push_back(stem + ".json");
    }
    manifest.outputs.push_back("manifest.json");
    manifest.duration_seconds = seconds;
    write_file(path("manifest.json"), manifest.to_json().dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo experiments on random amoebas and coamoebas"};
    app.require_subcommand(1);
    Settings s;
    std::map<std::string, CLI::App*> subs;
    for (const auto& sc : subcommands()) {
        CLI::App* sub = app.add_subcommand(sc.name, sc.help);
        for (const auto& key : sc.keys) add_option(sub, s, key);
        sub->add_option("--config", s.config, "key = value config file");
        subs[sc.name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const auto* sc = &subcommands().front();
    for (const auto& c : subcommands()) {
        if (subs[c.name]->parsed()) sc = &c;
    }
    try {
        if (!s.config.empty()) apply_config(subs[sc->name], s.config);
        const auto start = std::chrono::steady_clock::now();
        Outcome o = run_subcommand(sc->name, s);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.summary["subcommand"] = sc->name;
        if (!o.verdict.empty()) o.summary["verdict"] = o.verdict;
        if (!s.out.empty()) write_outputs(sc->name, s, sc->keys, o, seconds);
        std::cout << o.summary.dump(2) << '\n';
        return o.verdict == "fail" ? 2 : 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
