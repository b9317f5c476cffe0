#pragma once

#include <map>
#include <string>
#include <vector>

#include "ffgain/linksim.hpp"
#include "ffgain/solver.hpp"
#include "ffgain/stats.hpp"
#include "ffgain/types.hpp"

namespace ffgain::config {

// Fully resolved campaign description. Built from the default document,
// optionally merged with a JSON config file and key=value overrides.
struct Config {
    std::vector<ApertureAntenna> antennas;

    struct PairSpec {
        PairKey key;
        double offset_m = 0.0;
    };
    std::vector<PairSpec> pairs;

    std::vector<Cluster> base_clusters;  // per-pair offsets not yet applied
    FrequencyGrid grid;
    std::size_t runs = 6;

    solver::pl_mode solver_mode = solver::pl_mode::exact_pl;
    stats::average_domain average_domain = stats::average_domain::linear;
    stats::std_kind std_kind = stats::std_kind::population;

    linksim::CouplingModel model;

    // Distance sweep used by the extrapolation cross-check: `segments`
    // consecutive blocks of `points_per_segment` samples sharing
    // `overlap_points` distances with each neighbour.
    struct SweepSpec {
        double start_m = 0.35;
        double stop_m = 1.75;
        std::size_t segments = 3;
        std::size_t points_per_segment = 130;
        std::size_t overlap_points = 8;
    };
    SweepSpec sweep;

    int fit_order = 2;
    // "auto" = half a band-center wavelength, "off", or a length quantity.
    std::string boxcar = "auto";

    std::size_t ccm_cluster = 2;  // 1-based cluster picked by `compare`

    std::string campaign_file;  // optional: load instead of synthesizing
    std::string sweep_file;     // optional: load instead of synthesizing

    double report_frequency_hz = 170e9;

    // Derived helpers.
    std::map<PairKey, std::vector<Cluster>> pair_clusters() const;
    std::map<PairKey, std::vector<Cluster>> sweep_segments() const;
    const ApertureAntenna& antenna(const std::string& id) const;
    double boxcar_window_m() const;  // 0 = disabled
};

// `path` empty = built-in defaults. `overrides` entries are dotted-path
// key=value pairs; unknown keys and type mismatches are rejected.
Config load(const std::string& path = "",
            const std::vector<std::string>& overrides = {});

// The built-in default document, serialized as pretty JSON.
std::string default_document();

}  // namespace ffgain::config
