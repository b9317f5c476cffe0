#include "ffgain/types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace ffgain {

namespace {

double parse_number(const std::string& text) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw validation_error("not a number: '" + text + "'");
    }
    return value;
}

}  // namespace

double parse_quantity(const std::string& text, const std::string& dimension) {
    std::string body = text;
    std::string suffix;
    // Split a trailing unit word off the number, if present.
    auto pos = body.find_last_of("0123456789.");
    if (pos != std::string::npos && pos + 1 < body.size()) {
        suffix = body.substr(pos + 1);
        body = body.substr(0, pos + 1);
        while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front()))) {
            suffix.erase(suffix.begin());
        }
    }
    const double value = parse_number(body);
    if (suffix.empty()) return value;  // already in the base unit

    struct unit { const char* name; const char* dim; double scale; };
    static const unit units[] = {
        {"m", "length", 1.0},        {"cm", "length", 1e-2},
        {"mm", "length", 1e-3},      {"um", "length", 1e-6},
        {"Hz", "frequency", 1.0},    {"kHz", "frequency", 1e3},
        {"MHz", "frequency", 1e6},   {"GHz", "frequency", 1e9},
        {"THz", "frequency", 1e12},  {"dB", "db", 1.0},
        {"deg", "angle", 1.0},       {"rad", "angle", 0.0},
    };
    for (const unit& u : units) {
        if (suffix == u.name) {
            if (dimension != u.dim) {
                throw validation_error("unit '" + suffix + "' does not measure " +
                                       dimension + " in '" + text + "'");
            }
            if (dimension == "angle") {
                return suffix == std::string("deg") ? radians_from_degrees(value) : value;
            }
            return value * u.scale;
        }
    }
    throw validation_error("unknown unit '" + suffix + "' in '" + text + "'");
}

antenna_kind antenna_kind_from_string(const std::string& s) {
    if (s == "rectangular_horn") return antenna_kind::rectangular_horn;
    if (s == "open_waveguide") return antenna_kind::open_waveguide;
    throw validation_error("unknown antenna kind '" + s + "'");
}

std::string to_string(antenna_kind k) {
    return k == antenna_kind::rectangular_horn ? "rectangular_horn" : "open_waveguide";
}

ApertureAntenna::ApertureAntenna(std::string id_, double width_m, double height_m,
                                 antenna_kind kind_)
    : id(std::move(id_)), aperture_width(width_m), aperture_height(height_m), kind(kind_) {
    if (id.empty()) throw validation_error("antenna id must be non-empty");
    if (!(aperture_width >= 0.0) || !(aperture_height >= 0.0)) {
        throw validation_error("antenna '" + id + "': aperture dimensions must be >= 0");
    }
}

double ApertureAntenna::diagonal() const {
    return std::hypot(aperture_width, aperture_height);
}

FrequencyGrid::FrequencyGrid(double start, double stop, std::size_t n)
    : start_hz(start), stop_hz(stop), count(n) {
    if (!(start_hz > 0.0)) throw validation_error("frequency grid: start must be > 0");
    if (!(start_hz < stop_hz)) throw validation_error("frequency grid: start must be < stop");
    if (count < 2) throw validation_error("frequency grid: count must be >= 2");
}

double FrequencyGrid::at(std::size_t f) const {
    // Single canonical formula; every component derives grid points this way
    // so the same index always yields the same double.
    return start_hz + static_cast<double>(f) * (stop_hz - start_hz) /
                          static_cast<double>(count - 1);
}

std::vector<double> FrequencyGrid::points() const {
    std::vector<double> p(count);
    for (std::size_t f = 0; f < count; ++f) p[f] = at(f);
    return p;
}

Cluster::Cluster(double start_m, double step_m, std::size_t n, double offset_m)
    : start_distance(start_m), step(step_m), count(n), pair_offset(offset_m) {
    if (!(step > 0.0)) throw validation_error("cluster: step must be > 0");
    if (count < 2) throw validation_error("cluster: count must be >= 2");
    if (!(distance_at(0) > 0.0)) {
        throw validation_error("cluster: all distances must be > 0");
    }
}

double Cluster::distance_at(std::size_t m) const {
    return start_distance + pair_offset + static_cast<double>(m) * step;
}

double Cluster::midpoint_distance() const {
    return distance_at(0) + 0.5 * static_cast<double>(count - 1) * step;
}

std::vector<double> Cluster::distances() const {
    std::vector<double> d(count);
    for (std::size_t m = 0; m < count; ++m) d[m] = distance_at(m);
    return d;
}

PairKey::PairKey(std::string a, std::string b) {
    if (a.empty() || b.empty()) throw validation_error("antenna pair ids must be non-empty");
    if (a == b) throw validation_error("antenna pair must use two distinct ids");
    if (b < a) std::swap(a, b);
    first = std::move(a);
    second = std::move(b);
}

void SweepTrace::validate() const {
    if (distances.empty()) throw validation_error("trace: no distance points");
    if (grid.count < 2) throw validation_error("trace: frequency grid missing");
    for (std::size_t m = 0; m + 1 < distances.size(); ++m) {
        if (!(distances[m] < distances[m + 1])) {
            throw validation_error("trace: distances must be strictly increasing");
        }
    }
    if (!(distances.front() > 0.0)) throw validation_error("trace: distances must be > 0");
    if (s21.size() != distances.size() * grid.count) {
        throw validation_error("trace: s21 shape does not match header");
    }
    if (!phase.empty() && phase.size() != s21.size()) {
        throw validation_error("trace: phase shape does not match s21");
    }
    for (double v : s21) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw validation_error("trace: s21 magnitudes must be finite and >= 0");
        }
    }
}

std::size_t Campaign::cluster_count() const {
    return clusters.empty() ? 0 : clusters.begin()->second.size();
}

std::size_t Campaign::run_count() const {
    if (traces.empty() || traces.begin()->second.empty()) return 0;
    return traces.begin()->second.front().size();
}

const ApertureAntenna& Campaign::antenna(const std::string& id) const {
    for (const auto& a : antennas) {
        if (a.id == id) return a;
    }
    throw validation_error("unknown antenna id '" + id + "'");
}

std::array<PairKey, 3> Campaign::pair_keys() const {
    if (antennas.size() != 3) throw validation_error("campaign needs exactly three antennas");
    std::array<PairKey, 3> keys{PairKey(antennas[0].id, antennas[1].id),
                                PairKey(antennas[0].id, antennas[2].id),
                                PairKey(antennas[1].id, antennas[2].id)};
    std::sort(keys.begin(), keys.end());
    return keys;
}

void Campaign::validate() const {
    if (antennas.size() != 3) throw validation_error("campaign needs exactly three antennas");
    for (const auto& a : antennas) {
        if (!(a.aperture_width > 0.0) || !(a.aperture_height > 0.0)) {
            throw validation_error("antenna '" + a.id + "': campaign antennas need positive apertures");
        }
    }
    const auto keys = pair_keys();
    const std::size_t n_clusters = cluster_count();
    const std::size_t n_runs = run_count();
    if (n_clusters == 0 || n_runs == 0) throw validation_error("campaign has no traces");
    for (const auto& key : keys) {
        auto ct = clusters.find(key);
        auto tt = traces.find(key);
        if (ct == clusters.end() || tt == traces.end()) {
            throw validation_error("campaign is missing pair " + key.label());
        }
        if (ct->second.size() != n_clusters || tt->second.size() != n_clusters) {
            throw validation_error("pair " + key.label() + ": cluster count mismatch");
        }
        for (std::size_t c = 0; c < n_clusters; ++c) {
            if (tt->second[c].size() != n_runs) {
                throw validation_error("pair " + key.label() + ": run count mismatch");
            }
            for (const SweepTrace& tr : tt->second[c]) {
                tr.validate();
                if (tr.point_count() != ct->second[c].count ||
                    tr.grid.count != grid.count) {
                    throw validation_error("pair " + key.label() + ": trace shape mismatch");
                }
            }
        }
    }
}

}  // namespace ffgain
