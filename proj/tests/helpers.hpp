#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ffgain/rng.hpp"
#include "ffgain/solver.hpp"
#include "ffgain/types.hpp"

namespace testutil {

using namespace ffgain;

// Back-solved default trio: two identical pyramidal horns and one smaller
// conical-style aperture, 4:3 width:height.
inline ApertureAntenna horn(const std::string& id, double w_mm, double h_mm) {
    return ApertureAntenna(id, w_mm * 1e-3, h_mm * 1e-3);
}

inline std::vector<ApertureAntenna> default_trio() {
    return {horn("PA", 18.1424, 13.6068), horn("PB", 18.1424, 13.6068),
            horn("FC", 6.7504, 5.0628)};
}

// |S21| trace of one pair under the textbook link equation with constant
// linear gains g1*g2.
inline SweepTrace friis_trace(const PairKey& pair, const FrequencyGrid& grid,
                              const std::vector<double>& distances,
                              double gain_product_linear, int run = 0) {
    SweepTrace t;
    t.pair = pair;
    t.run_index = run;
    t.grid = grid;
    t.distances = distances;
    t.s21.resize(distances.size() * grid.count);
    for (std::size_t m = 0; m < distances.size(); ++m) {
        for (std::size_t f = 0; f < grid.count; ++f) {
            const double lambda = wavelength(grid.at(f));
            t.at(m, f) = std::sqrt(
                solver::friis_s21(gain_product_linear, 1.0, lambda, distances[m]));
        }
    }
    return t;
}

inline bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace testutil
