#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "ffgain/solver.hpp"
#include "ffgain/types.hpp"

namespace ffgain::extrapolate {

// Result of a 1/d series fit to Friis-de-embedded data at one frequency.
struct ExtrapolationFit {
    std::vector<double> coefficients;      // a0..aK, dB domain
    double asymptote_gain_product_db = 0;  // == coefficients[0]
    double rms_residual_db = 0.0;
    double span_ratio = 0.0;               // d_max/d_min of the fitted data
    bool span_warning = false;             // span_ratio < 3 (advisory)
};

// Merges overlapping distance segments of one pair into a single
// strictly-increasing trace. Consecutive segments must share >= 2 distance
// points; each segment gets a dB offset estimated by least squares on the
// overlap, shifts are re-centered to zero mean, and coincident points are
// averaged. Output is independent of the input segment order.
SweepTrace stitch_clusters(const std::vector<SweepTrace>& segments);

// Centered moving average over a distance window; smooths periodic ripple
// before fitting. Window smaller than two sample steps returns the input.
SweepTrace boxcar_average(const SweepTrace& trace, double window_m);

// Least-squares fit of y(d) = |S21|dB + 20*log10(4*pi*d/lambda) to
// sum_j a_j / d^j for one frequency column. Optional per-point weights.
ExtrapolationFit fit_inverse_distance(const std::vector<double>& distances,
                                      const std::vector<double>& s21_mag,
                                      double lambda, int order = 2,
                                      const std::vector<double>* weights = nullptr);

// Convenience: fits every frequency column of a trace.
std::vector<ExtrapolationFit> fit_trace(const SweepTrace& trace, int order = 2);

// Solves the three-antenna system using each fit's asymptotic gain product.
solver::ThreeAntennaGains extrapolated_three_antenna(
    const std::array<std::pair<PairKey, ExtrapolationFit>, 3>& fits);

}  // namespace ffgain::extrapolate
