#pragma once

#include <vector>

#include "ffgain/config.hpp"
#include "ffgain/extrapolate.hpp"
#include "ffgain/io.hpp"
#include "ffgain/types.hpp"

namespace ffgain::pipeline {

// Campaign acquisition: parse the configured file when one is given,
// otherwise synthesize from the coupling model.
Campaign load_or_synthesize_campaign(const config::Config& cfg);

// Same for the extrapolation distance sweep (segments as clusters, the
// configured run count collapses to averaged single runs downstream).
Campaign load_or_synthesize_sweep(const config::Config& cfg);

// Full reduction: run averaging, per-point gains, per-frequency mean and
// deviation. One GainSolution per cluster, in cluster order.
std::vector<GainSolution> solve_clusters(const Campaign& campaign,
                                         const config::Config& cfg);

// Extrapolation pipeline: per pair stitch + smooth + fit, then the
// three-antenna solve on the asymptotes. `diagnostics` lists per-pair fit
// quality at the band-center frequency.
struct SweepResult {
    GainSolution solution;
    io::Table diagnostics;
};
SweepResult extrapolate_sweep(const Campaign& sweep, const config::Config& cfg);

// Far-field distance comparison for every distinct aperture pairing.
io::Table ffdist_table(const config::Config& cfg, double frequency_hz);

// Cluster schedule: distances, worst-case phase deviation at the cluster
// midpoint, and pass/fail verdicts for each criterion at the cluster start.
io::Table plan_table(const config::Config& cfg, double frequency_hz);

// Per-antenna gain tables (solve: gains; stats: gains + sigma_f).
io::Table solve_table(const std::vector<GainSolution>& per_cluster);
io::Table stats_table(const std::vector<GainSolution>& per_cluster);

// Per-antenna method comparison: frequency-averaged gain from the compact
// cluster solve vs the extrapolated asymptote.
io::Table compare_table(const GainSolution& ccm, const GainSolution& extrapolated);

}  // namespace ffgain::pipeline
