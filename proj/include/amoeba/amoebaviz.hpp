#pragma once

#include "amoeba/estimate.hpp"
#include "amoeba/polycore.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace amoeba {

enum class RasterMode {
    /// Pixel occupied when its center lies on the sampled slice image: each
    /// column is sampled at its center u, and consecutive roots along every
    /// z2-branch (as arg z1 advances) are joined into vertical segments.
    center_coverage,
    /// Pixel occupied when any sampled root lands in it. Counts partly covered
    /// boundary pixels in full, so it overestimates area by O(cell size).
    root_hits,
};

/// Occupancy raster of Log(V) over the window [-R, R]^2.
struct RasterGrid {
    double R = 0.0;
    int resolution = 0;
    int samples_per_axis = 0;
    /// Row-major, row 0 at log|z2| = -R; 1 = occupied.
    std::vector<std::uint8_t> occupancy;
    double area_estimate = 0.0;
    long long slices_skipped = 0;
    RasterMode mode = RasterMode::center_coverage;

    double cell_size() const { return 2.0 * R / resolution; }
    long long occupied_cells() const;
    bool occupied(int ix, int iy) const {
        return occupancy[static_cast<std::size_t>(iy) * static_cast<std::size_t>(resolution) +
                         static_cast<std::size_t>(ix)] != 0;
    }
};

/// Rasterizes Log(V) for a curve f(z1, z2). arg z1 takes samples_per_axis
/// values 2 pi j / S; in root_hits mode log|z1| takes S values uniform in
/// [-R-1, R+1], in center_coverage mode one value per pixel column. Each
/// z2-slice is solved with all_complex_roots (degree drops handled, degree-0
/// slices skipped). `workers` threads split the columns; the result does not
/// depend on it. Doubling S only adds samples, so occupancy never shrinks.
RasterGrid raster_amoeba(const MultiPoly& f, double R, int resolution, int samples_per_axis, int workers = 1,
                         RasterMode mode = RasterMode::center_coverage);

struct RasterParams {
    double R = 6.0;
    int resolution = 600;
    int samples_per_axis = 1200;
    RasterMode mode = RasterMode::center_coverage;
};

/// Mean raster area over `n_curves` random complex Kostlan curves of degree d
/// (curve i drawn from stream (master_seed, i, "curve")). No target is set.
MCEstimate mean_amoeba_area(int degree, int n_curves, const RasterParams& params, std::uint64_t master_seed,
                            int workers = 1);

/// Binary P5 graymap, occupied = 0, free = 255, top row at log|z2| = +R.
void write_pgm(const RasterGrid& grid, const std::string& path);

}  // namespace amoeba
