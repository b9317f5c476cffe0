#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffgain/errors.hpp"
#include "ffgain/units.hpp"

namespace ffgain {

enum class antenna_kind { rectangular_horn, open_waveguide };

antenna_kind antenna_kind_from_string(const std::string& s);
std::string to_string(antenna_kind k);

// Rectangular radiating aperture; the diagonal is the "largest dimension"
// every far-field criterion is based on.
struct ApertureAntenna {
    std::string id;
    double aperture_width = 0.0;   // meters
    double aperture_height = 0.0;  // meters
    antenna_kind kind = antenna_kind::rectangular_horn;

    ApertureAntenna() = default;
    ApertureAntenna(std::string id_, double width_m, double height_m,
                    antenna_kind kind_ = antenna_kind::rectangular_horn);

    double diagonal() const;       // sqrt(w^2 + h^2), meters
    double area() const { return aperture_width * aperture_height; }
};

// Uniformly spaced frequency axis.
struct FrequencyGrid {
    double start_hz = 0.0;
    double stop_hz = 0.0;
    std::size_t count = 0;

    FrequencyGrid() = default;
    FrequencyGrid(double start, double stop, std::size_t n);

    double at(std::size_t f) const;
    double center_hz() const { return 0.5 * (start_hz + stop_hz); }
    std::vector<double> points() const;
};

// One block of equally spaced measurement distances. `pair_offset` is the
// per-pair depth correction added on top of the base start distance.
struct Cluster {
    double start_distance = 0.0;  // meters, aperture to aperture
    double step = 0.0;            // meters
    std::size_t count = 0;
    double pair_offset = 0.0;     // meters

    Cluster() = default;
    Cluster(double start_m, double step_m, std::size_t n, double offset_m = 0.0);

    double distance_at(std::size_t m) const;
    double stop_distance() const { return distance_at(count - 1); }
    double midpoint_distance() const;
    std::vector<double> distances() const;
};

// Canonically ordered antenna-id pair so (A,B) and (B,A) compare equal.
struct PairKey {
    std::string first, second;

    PairKey() = default;
    PairKey(std::string a, std::string b);

    bool operator==(const PairKey&) const = default;
    bool operator<(const PairKey& o) const {
        return std::tie(first, second) < std::tie(o.first, o.second);
    }
    std::string label() const { return first + "," + second; }
};

// |S21| of one antenna pair over (distance index m, frequency index f) for a
// single repetition run. Magnitudes are linear; phase is optional.
struct SweepTrace {
    PairKey pair;
    int run_index = 0;
    FrequencyGrid grid;
    std::vector<double> distances;          // length m, strictly increasing
    std::vector<double> s21;                // row-major [m][f], linear magnitude
    std::vector<double> phase;              // radians, empty or same shape as s21

    std::size_t point_count() const { return distances.size(); }
    std::size_t frequency_count() const { return grid.count; }
    double& at(std::size_t m, std::size_t f) { return s21[m * grid.count + f]; }
    const double& at(std::size_t m, std::size_t f) const {
        return s21[m * grid.count + f];
    }

    // Throws validation_error if shapes/orderings are inconsistent.
    void validate() const;
};

// Everything the three-antenna solver needs: three antennas, one trace list
// per unordered pair (N repetition runs x clusters), shared frequency grid.
struct Campaign {
    std::vector<ApertureAntenna> antennas;          // exactly three
    FrequencyGrid grid;
    // Per pair: cluster geometry (same base clusters, per-pair offsets).
    std::map<PairKey, std::vector<Cluster>> clusters;
    // Per pair: traces indexed [cluster][run].
    std::map<PairKey, std::vector<std::vector<SweepTrace>>> traces;

    std::size_t cluster_count() const;
    std::size_t run_count() const;
    const ApertureAntenna& antenna(const std::string& id) const;
    std::array<PairKey, 3> pair_keys() const;

    void validate() const;
};

enum class solve_method { ccm, extrapolation };

// Per-antenna result of a gain pipeline: gain and per-frequency deviation.
struct GainSolution {
    struct PerAntenna {
        std::string id;
        std::vector<double> gain_db;   // length grid.count
        std::vector<double> sigma_f;   // length grid.count, NaN where undefined
    };
    FrequencyGrid grid;
    std::vector<PerAntenna> antennas;
    solve_method method = solve_method::ccm;
};

}  // namespace ffgain
