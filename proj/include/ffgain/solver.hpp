#pragma once

#include <array>
#include <string>

#include "ffgain/types.hpp"

namespace ffgain::solver {

// Free-space path loss 20*log10(4*pi*d/lambda) in dB.
double path_loss_db(double d, double lambda);

// Forward Friis model: |S21|^2 = Gt*Gr*(lambda/(4*pi*d))^2 (all linear).
double friis_s21(double gt_linear, double gr_linear, double lambda, double d);

// Exact inverse of friis_s21: G1*G2 = |S21|^2 * (4*pi*d/lambda)^2.
double pair_gain_product(double s21_sq_linear, double d, double lambda);

// Path loss evaluated at the arithmetic mean of the three pair distances
// (the mean sits inside the logarithm).
double averaged_path_loss_db(double d_ab, double d_ac, double d_bc, double lambda);

enum class pl_mode {
    exact_pl,     // per-pair distances used individually
    averaged_pl,  // single path loss at the mean distance replaces all three
};

pl_mode pl_mode_from_string(const std::string& s);
std::string to_string(pl_mode m);

// One pair's measurement at a single (m, f) grid point.
struct PairMeasurement {
    PairKey pair;
    double s21_sq_linear = 0.0;  // |S21|^2
    double distance = 0.0;       // meters
};

// Per-antenna solution, id-sorted.
struct ThreeAntennaGains {
    std::array<std::string, 3> ids;
    std::array<double, 3> gain_linear{};

    double gain_db(std::size_t i) const { return db_from_linear_power(gain_linear[i]); }
    double for_id(const std::string& id) const;
};

// Solves the three-antenna system at one grid point. The three measurements
// must form a complete triangle over exactly three antenna ids; throws
// validation_error naming the offending pair otherwise.
ThreeAntennaGains solve_three_antenna(const std::array<PairMeasurement, 3>& pairs,
                                      double lambda, pl_mode mode = pl_mode::exact_pl);

// Solves the 3x3 dB system given the three pair gain products directly
// (in dB). Shared by the per-point solver and the extrapolation cross-check.
struct PairProductDb {
    PairKey pair;
    double product_db = 0.0;
};
ThreeAntennaGains solve_from_products_db(const std::array<PairProductDb, 3>& products);

namespace detail {

// Algebraically identical solution via sqrt of product ratios, kept as an
// independent cross-check for tests.
ThreeAntennaGains solve_product_ratio_form(const std::array<PairMeasurement, 3>& pairs,
                                           double lambda, pl_mode mode);

}  // namespace detail

}  // namespace ffgain::solver
