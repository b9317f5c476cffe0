#pragma once

#include <array>
#include <string>
#include <vector>

#include "ffgain/solver.hpp"
#include "ffgain/types.hpp"

namespace ffgain::stats {

enum class average_domain {
    linear,  // mean of linear magnitudes (default)
    db,      // mean of dB values, converted back
};
average_domain average_domain_from_string(const std::string& s);

enum class std_kind {
    population,  // divide by M (default)
    sample,      // divide by M-1 (non-default convenience option)
};
std_kind std_kind_from_string(const std::string& s);

// Run-averaged magnitudes of one pair within one cluster.
struct DatasetA {
    PairKey pair;
    FrequencyGrid grid;
    std::vector<double> distances;   // length m
    std::vector<double> mean_s21;    // [m][f] linear magnitude
    std::size_t runs = 0;

    const double& at(std::size_t m, std::size_t f) const {
        return mean_s21[m * grid.count + f];
    }
};

// Per-point three-antenna gains for all three antennas over one cluster.
struct DatasetB {
    std::array<std::string, 3> ids;
    FrequencyGrid grid;
    std::size_t point_count = 0;
    // gain_db[a][m*F + f]; NaN where the point is a gap.
    std::array<std::vector<double>, 3> gain_db;
    std::vector<unsigned char> gap;  // [m*F + f], 1 where the solve failed

    double at(std::size_t antenna, std::size_t m, std::size_t f) const {
        return gain_db[antenna][m * grid.count + f];
    }
};

// Arithmetic mean across repetition runs at each (m, f). All traces must
// belong to the same pair and share shape.
DatasetA average_runs(const std::vector<SweepTrace>& runs,
                      average_domain domain = average_domain::linear);

// Applies the three-antenna solve independently at every (m, f) point.
// Failing points (non-positive magnitude) become gaps, not errors.
DatasetB per_point_gains(const std::array<DatasetA, 3>& pairs,
                         solver::pl_mode mode = solver::pl_mode::exact_pl);

// Per-frequency standard deviation across measurement points, one array per
// antenna. Frequencies with fewer than two valid points yield NaN.
std::array<std::vector<double>, 3> sigma_f(const DatasetB& data,
                                           std_kind kind = std_kind::population);

// Per-frequency mean gain (dB domain) across measurement points; NaN where
// no valid point exists.
std::array<std::vector<double>, 3> mean_gain_db(const DatasetB& data);

}  // namespace ffgain::stats
