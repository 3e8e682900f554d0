#include "amoeba/amoebaviz.hpp"
#include "amoeba/errors.hpp"
#include "amoeba/report.hpp"
#include "amoeba/sampler.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace amoeba;

namespace {

const double kPi = std::numbers::pi;
const double kLineArea = kPi * kPi / 2.0;

MultiPoly line() {
    return MultiPoly(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{0, 0}, -1.0}}, Field::real);
}

/// f(a z1, b z2).
MultiPoly torus_translate(const MultiPoly& f, cplx a, cplx b) {
    std::vector<std::pair<ExponentVector, cplx>> terms;
    for (const auto& [e, c] : f.terms()) terms.push_back({e, c * std::pow(a, e[0]) * std::pow(b, e[1])});
    return MultiPoly(f.nvars(), terms, Field::complex);
}

}  // namespace

TEST_CASE("line amoeba area") {
    const RasterGrid g = raster_amoeba(line(), 6.0, 240, 480);
    CHECK(g.area_estimate == doctest::Approx(kLineArea).epsilon(0.10));
    CHECK(g.area_estimate == doctest::Approx(g.occupied_cells() * g.cell_size() * g.cell_size()));
    CHECK(g.slices_skipped == 0);
}

TEST_CASE("line raster contains the origin region and misses the far corner") {
    const RasterGrid g = raster_amoeba(line(), 6.0, 120, 240);
    const double cell = g.cell_size();
    auto index = [&](double x) { return static_cast<int>(std::floor((x + g.R) / cell)); };
    // (0.2, 0.2): |z1| = |z2| = e^0.2 satisfies the triangle inequalities.
    CHECK(g.occupied(index(0.2), index(0.2)));
    // Third quadrant deep inside: |z1| + |z2| < 1 is impossible on the line.
    CHECK_FALSE(g.occupied(index(-3.0), index(-3.0)));
    CHECK_FALSE(g.occupied(index(4.0), index(-4.0)));
}

TEST_CASE("amoebas with no interior shrink with the cell size") {
    const MultiPoly hyperbola(2, {{{1, 1}, 1.0}, {{0, 0}, -1.0}}, Field::real);
    const MultiPoly horizontal(2, {{{0, 1}, 1.0}, {{0, 0}, -2.0}}, Field::real);
    for (const MultiPoly& f : {hyperbola, horizontal}) {
        for (RasterMode mode : {RasterMode::center_coverage, RasterMode::root_hits}) {
            const double coarse = raster_amoeba(f, 6.0, 60, 120, 1, mode).area_estimate;
            const double fine = raster_amoeba(f, 6.0, 240, 480, 1, mode).area_estimate;
            // Area of a curve image is O(cell size).
            CHECK(fine <= 0.3 * coarse + 1e-12);
            CHECK(fine < 0.7);
        }
    }
}

TEST_CASE("doubling the samples never removes pixels") {
    const MultiPoly f = dehomogenize(sample_dense_complex(EnsembleSpec::dense(3, 2, Field::complex), {1, 0, "curve"}), 0);
    for (RasterMode mode : {RasterMode::center_coverage, RasterMode::root_hits}) {
        const RasterGrid a = raster_amoeba(f, 6.0, 100, 150, 1, mode);
        const RasterGrid b = raster_amoeba(f, 6.0, 100, 300, 1, mode);
        bool subset = true;
        for (std::size_t i = 0; i < a.occupancy.size(); ++i) {
            if (a.occupancy[i] && !b.occupancy[i]) subset = false;
        }
        CHECK(subset);
        CHECK(b.area_estimate >= a.area_estimate);
    }
}

TEST_CASE("root hits overestimate relative to center coverage") {
    const RasterGrid c = raster_amoeba(line(), 6.0, 150, 300, 1, RasterMode::center_coverage);
    const RasterGrid h = raster_amoeba(line(), 6.0, 150, 300, 1, RasterMode::root_hits);
    CHECK(h.area_estimate >= c.area_estimate);
}

TEST_CASE("window growth barely changes the area") {
    const MultiPoly f = dehomogenize(sample_dense_complex(EnsembleSpec::dense(3, 2, Field::complex), {2, 0, "curve"}), 0);
    // Same cell size in both windows.
    const double a6 = raster_amoeba(f, 6.0, 180, 360).area_estimate;
    const double a8 = raster_amoeba(f, 8.0, 240, 480).area_estimate;
    CHECK(std::abs(a8 - a6) / a6 < 0.02);
}

TEST_CASE("torus translation preserves the area") {
    const RasterGrid base = raster_amoeba(line(), 6.0, 200, 400);
    const MultiPoly moved = torus_translate(line(), std::polar(std::exp(0.5), 1.0), std::polar(std::exp(-0.3), -2.0));
    const RasterGrid g = raster_amoeba(moved, 6.0, 200, 400);
    CHECK(std::abs(g.area_estimate - base.area_estimate) / base.area_estimate < 0.02);
}

TEST_CASE("raster does not depend on the worker count") {
    const MultiPoly f = dehomogenize(sample_dense_complex(EnsembleSpec::dense(3, 3, Field::complex), {3, 0, "curve"}), 0);
    const RasterGrid a = raster_amoeba(f, 6.0, 80, 160, 1);
    const RasterGrid b = raster_amoeba(f, 6.0, 80, 160, 4);
    CHECK(a.occupancy == b.occupancy);
    CHECK(a.area_estimate == b.area_estimate);
}

TEST_CASE("constant slices are skipped; all-degenerate input throws") {
    // z1 - 1: every slice is constant in z2.
    const MultiPoly f(2, {{{1, 0}, 1.0}, {{0, 0}, -1.0}}, Field::real);
    CHECK_THROWS(raster_amoeba(f, 6.0, 40, 40));
}

TEST_CASE("pgm and sidecar") {
    const RasterGrid g = raster_amoeba(line(), 6.0, 64, 128);
    const auto dir = std::filesystem::temp_directory_path() / "amoeba_pgm_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "line.pgm").string();
    write_pgm(g, path);
    std::ifstream in(path, std::ios::binary);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    in.get();
    CHECK(magic == "P5");
    CHECK(w == 64);
    CHECK(h == 64);
    CHECK(maxval == 255);
    std::vector<unsigned char> pixels(64 * 64);
    in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    CHECK(in.gcount() == 64 * 64);
    long long dark = 0;
    for (int row = 0; row < 64; ++row) {
        for (int col = 0; col < 64; ++col) {
            const unsigned char p = pixels[static_cast<std::size_t>(row * 64 + col)];
            CHECK((p == 0 || p == 255));
            // Top file row is log|z2| = +R.
            CHECK((p == 0) == g.occupied(col, 63 - row));
            dark += p == 0;
        }
    }
    CHECK(dark == g.occupied_cells());

    const Json side = raster_sidecar(g);
    CHECK(side["R"] == 6.0);
    CHECK(side["resolution"] == 64);
    CHECK(side["samples"] == 128);
    CHECK(side["area_estimate"].get<double>() == doctest::Approx(g.area_estimate));
    std::filesystem::remove_all(dir);
}

TEST_CASE("mean line area over random degree-1 curves") {
    const MCEstimate e = mean_amoeba_area(1, 30, {6.0, 150, 300, RasterMode::center_coverage}, 5);
    CHECK(e.n_trials == 30);
    CHECK_FALSE(e.target.has_value());
    // Every line amoeba is a translate of the standard one.
    CHECK(e.mean == doctest::Approx(kLineArea).epsilon(0.10));
}
