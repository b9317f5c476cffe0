#include "ffgain/config.hpp"

#include <cmath>

#include <json.hpp>

#include "ffgain/errors.hpp"
#include "ffgain/io.hpp"

namespace ffgain::config {

using nlohmann::json;

namespace {

// Built-in defaults: a three-antenna setup with two large horns and one
// smaller horn, three distance clusters, and a down-scaled frequency grid.
json default_json() {
    return json{
        {"antennas",
         {{{"id", "PA"}, {"kind", "rectangular_horn"}, {"width", "18.1424 mm"}, {"height", "13.6068 mm"}},
          {{"id", "PB"}, {"kind", "rectangular_horn"}, {"width", "18.1424 mm"}, {"height", "13.6068 mm"}},
          {{"id", "FC"}, {"kind", "rectangular_horn"}, {"width", "6.7504 mm"}, {"height", "5.0628 mm"}}}},
        {"pairs",
         {{{"a", "PA"}, {"b", "PB"}, {"offset", "0 mm"}},
          {{"a", "PA"}, {"b", "FC"}, {"offset", "2.8 cm"}},
          {{"a", "PB"}, {"b", "FC"}, {"offset", "2.8 cm"}}}},
        {"clusters",
         {{{"start", "100 cm"}, {"step", "0.2 mm"}, {"count", 151}},
          {{"start", "120 cm"}, {"step", "0.2 mm"}, {"count", 151}},
          {{"start", "160 cm"}, {"step", "0.2 mm"}, {"count", 151}}}},
        {"grid", {{"start", "145 GHz"}, {"stop", "170 GHz"}, {"count", 21}}},
        {"runs", 6},
        {"solver", {{"mode", "exact_pl"}}},
        {"stats", {{"std", "population"}, {"average_domain", "linear"}}},
        {"sim",
         {{"mode", "physical"},
          {"field", "uniform"},
          {"quadrature_points_per_wavelength", 2.0},
          {"ripple", true},
          {"ripple_amplitude_db", 0.05},
          {"ripple_wavelength", "auto"},
          {"noise_sigma_db", 0.1},
          {"seed", 424242},
          {"emit_phase", false}}},
        {"sweep",
         {{"start", "35 cm"},
          {"stop", "175 cm"},
          {"segments", 3},
          {"points_per_segment", 130},
          {"overlap_points", 8}}},
        {"extrapolation", {{"order", 2}, {"boxcar", "auto"}}},
        {"compare", {{"ccm_cluster", 2}}},
        {"files", {{"campaign", ""}, {"sweep", ""}}},
        {"report", {{"frequency", "170 GHz"}}},
    };
}

bool types_compatible(const json& schema, const json& value) {
    if (schema.is_number() && value.is_number()) return true;
    // Quantity fields default to strings but accept bare numbers too.
    if (schema.is_string() && (value.is_string() || value.is_number())) return true;
    if (schema.is_boolean() && value.is_boolean()) return true;
    if (schema.is_array() && value.is_array()) return true;
    if (schema.is_object() && value.is_object()) return true;
    return false;
}

// Merges `user` into `base`, enforcing that every key exists in the schema
// with a compatible type. Arrays replace wholesale; their element schema is
// the first element of the default array.
void merge(json& base, const json& user, const std::string& path) {
    if (!user.is_object()) {
        throw validation_error("config: expected object at '" +
                               (path.empty() ? "<root>" : path) + "'");
    }
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string child = path.empty() ? it.key() : path + "." + it.key();
        if (!base.contains(it.key())) {
            throw validation_error("config: unknown key '" + child + "'");
        }
        json& slot = base[it.key()];
        if (!types_compatible(slot, it.value())) {
            throw validation_error("config: wrong type for '" + child + "'");
        }
        if (slot.is_object()) {
            merge(slot, it.value(), child);
        } else if (slot.is_array()) {
            const json element_schema = slot.empty() ? json() : slot.front();
            json replacement = json::array();
            std::size_t index = 0;
            for (const json& element : it.value()) {
                const std::string slot_path = child + "[" + std::to_string(index++) + "]";
                if (element_schema.is_object()) {
                    json merged = element_schema;
                    merge(merged, element, slot_path);
                    replacement.push_back(std::move(merged));
                } else {
                    replacement.push_back(element);
                }
            }
            slot = std::move(replacement);
        } else {
            slot = it.value();
        }
    }
}

// Applies one dotted-path override, e.g. "sim.seed=7" or
// "grid.count=41". The value is parsed as JSON when possible and treated as
// a string otherwise.
void apply_override(json& base, const std::string& entry) {
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
        throw validation_error("override '" + entry + "' is not key=value");
    }
    const std::string path = entry.substr(0, eq);
    const std::string raw = entry.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::exception&) {
        value = raw;  // plain string
    }

    // Build a nested single-key object mirroring the dotted path, then merge
    // so the same unknown-key/type checks apply.
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= path.size()) {
        const std::size_t dot = path.find('.', pos);
        if (dot == std::string::npos) {
            parts.push_back(path.substr(pos));
            break;
        }
        parts.push_back(path.substr(pos, dot - pos));
        pos = dot + 1;
    }
    json nested = value;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        nested = json{{*it, nested}};
    }
    merge(base, nested, "");
}

double quantity(const json& v, const std::string& dimension, const std::string& key) {
    try {
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) return parse_quantity(v.get<std::string>(), dimension);
    } catch (const validation_error& e) {
        throw validation_error("config '" + key + "': " + e.what());
    }
    throw validation_error("config '" + key + "': expected a quantity");
}

std::size_t count_of(const json& v, const std::string& key) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw validation_error("config '" + key + "': expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

}  // namespace

std::string default_document() { return default_json().dump(2) + "\n"; }

Config load(const std::string& path, const std::vector<std::string>& overrides) {
    json doc = default_json();
    if (!path.empty()) {
        json user;
        try {
            user = json::parse(io::read_file(path));
        } catch (const json::exception& e) {
            throw validation_error("config '" + path + "': " + e.what());
        }
        merge(doc, user, "");
    }
    for (const std::string& entry : overrides) apply_override(doc, entry);

    Config cfg;
    for (const json& a : doc["antennas"]) {
        cfg.antennas.emplace_back(a["id"].get<std::string>(),
                                  quantity(a["width"], "length", "antennas.width"),
                                  quantity(a["height"], "length", "antennas.height"),
                                  antenna_kind_from_string(a["kind"].get<std::string>()));
    }
    for (const json& p : doc["pairs"]) {
        Config::PairSpec spec;
        spec.key = PairKey(p["a"].get<std::string>(), p["b"].get<std::string>());
        spec.offset_m = quantity(p["offset"], "length", "pairs.offset");
        for (const auto& id : {spec.key.first, spec.key.second}) {
            cfg.antenna(id);  // existence check, uses cfg.antennas filled above
        }
        for (const auto& other : cfg.pairs) {
            if (other.key == spec.key) {
                throw validation_error("config: duplicate pair " + spec.key.label());
            }
        }
        cfg.pairs.push_back(spec);
    }
    for (const json& c : doc["clusters"]) {
        cfg.base_clusters.emplace_back(quantity(c["start"], "length", "clusters.start"),
                                       quantity(c["step"], "length", "clusters.step"),
                                       count_of(c["count"], "clusters.count"));
    }
    if (cfg.base_clusters.empty()) throw validation_error("config: no clusters defined");
    cfg.grid = FrequencyGrid(quantity(doc["grid"]["start"], "frequency", "grid.start"),
                             quantity(doc["grid"]["stop"], "frequency", "grid.stop"),
                             count_of(doc["grid"]["count"], "grid.count"));
    cfg.runs = count_of(doc["runs"], "runs");
    if (cfg.runs < 1) throw validation_error("config: runs must be >= 1");

    cfg.solver_mode = solver::pl_mode_from_string(doc["solver"]["mode"].get<std::string>());
    cfg.average_domain =
        stats::average_domain_from_string(doc["stats"]["average_domain"].get<std::string>());
    cfg.std_kind = stats::std_kind_from_string(doc["stats"]["std"].get<std::string>());

    const json& sim = doc["sim"];
    cfg.model.mode = linksim::sim_mode_from_string(sim["mode"].get<std::string>());
    cfg.model.field = linksim::aperture_field_from_string(sim["field"].get<std::string>());
    cfg.model.quadrature_points_per_wavelength =
        quantity(sim["quadrature_points_per_wavelength"], "dimensionless",
                 "sim.quadrature_points_per_wavelength");
    cfg.model.ripple = sim["ripple"].get<bool>();
    cfg.model.ripple_amplitude_db =
        quantity(sim["ripple_amplitude_db"], "db", "sim.ripple_amplitude_db");
    if (sim["ripple_wavelength"].is_string() &&
        sim["ripple_wavelength"].get<std::string>() == "auto") {
        cfg.model.ripple_wavelength = 0.0;
    } else {
        cfg.model.ripple_wavelength =
            quantity(sim["ripple_wavelength"], "length", "sim.ripple_wavelength");
    }
    cfg.model.noise_sigma_db = quantity(sim["noise_sigma_db"], "db", "sim.noise_sigma_db");
    if (cfg.model.noise_sigma_db < 0.0) {
        throw validation_error("config: sim.noise_sigma_db must be >= 0");
    }
    cfg.model.seed = sim["seed"].get<std::uint64_t>();
    cfg.model.emit_phase = sim["emit_phase"].get<bool>();

    const json& sweep = doc["sweep"];
    cfg.sweep.start_m = quantity(sweep["start"], "length", "sweep.start");
    cfg.sweep.stop_m = quantity(sweep["stop"], "length", "sweep.stop");
    cfg.sweep.segments = count_of(sweep["segments"], "sweep.segments");
    cfg.sweep.points_per_segment =
        count_of(sweep["points_per_segment"], "sweep.points_per_segment");
    cfg.sweep.overlap_points = count_of(sweep["overlap_points"], "sweep.overlap_points");

    cfg.fit_order = static_cast<int>(count_of(doc["extrapolation"]["order"], "extrapolation.order"));
    if (cfg.fit_order < 1 || cfg.fit_order > 4) {
        throw validation_error("config: extrapolation.order must be in [1, 4]");
    }
    if (doc["extrapolation"]["boxcar"].is_number()) {
        cfg.boxcar = io::format_double(doc["extrapolation"]["boxcar"].get<double>());
    } else {
        cfg.boxcar = doc["extrapolation"]["boxcar"].get<std::string>();
    }
    cfg.boxcar_window_m();  // validate eagerly

    cfg.ccm_cluster = count_of(doc["compare"]["ccm_cluster"], "compare.ccm_cluster");
    if (cfg.ccm_cluster < 1 || cfg.ccm_cluster > cfg.base_clusters.size()) {
        throw validation_error("config: compare.ccm_cluster out of range (1.." +
                               std::to_string(cfg.base_clusters.size()) + ")");
    }
    cfg.campaign_file = doc["files"]["campaign"].get<std::string>();
    cfg.sweep_file = doc["files"]["sweep"].get<std::string>();
    cfg.report_frequency_hz =
        quantity(doc["report"]["frequency"], "frequency", "report.frequency");
    if (!(cfg.report_frequency_hz > 0.0)) {
        throw validation_error("config: report.frequency must be > 0");
    }

    if (cfg.antennas.size() == 3 && cfg.pairs.size() != 3) {
        throw validation_error("config: three antennas need exactly three pairs");
    }
    return cfg;
}

std::map<PairKey, std::vector<Cluster>> Config::pair_clusters() const {
    std::map<PairKey, std::vector<Cluster>> out;
    for (const auto& pair : pairs) {
        std::vector<Cluster> list;
        for (const Cluster& base : base_clusters) {
            list.emplace_back(base.start_distance, base.step, base.count, pair.offset_m);
        }
        out.emplace(pair.key, std::move(list));
    }
    return out;
}

std::map<PairKey, std::vector<Cluster>> Config::sweep_segments() const {
    if (!(sweep.stop_m > sweep.start_m)) {
        throw validation_error("config: sweep.stop must exceed sweep.start");
    }
    if (sweep.segments < 1) throw validation_error("config: sweep.segments must be >= 1");
    if (sweep.overlap_points < 2) {
        throw validation_error("config: sweep.overlap_points must be >= 2");
    }
    if (sweep.points_per_segment <= sweep.overlap_points) {
        throw validation_error("config: sweep.points_per_segment must exceed overlap_points");
    }
    const std::size_t advance = sweep.points_per_segment - sweep.overlap_points;
    const std::size_t total = sweep.segments * advance + sweep.overlap_points - 1;
    const double step = (sweep.stop_m - sweep.start_m) / static_cast<double>(total);

    std::map<PairKey, std::vector<Cluster>> out;
    for (const auto& pair : pairs) {
        std::vector<Cluster> list;
        for (std::size_t s = 0; s < sweep.segments; ++s) {
            const double start =
                sweep.start_m + static_cast<double>(s * advance) * step;
            list.emplace_back(start, step, sweep.points_per_segment, pair.offset_m);
        }
        out.emplace(pair.key, std::move(list));
    }
    return out;
}

const ApertureAntenna& Config::antenna(const std::string& id) const {
    for (const auto& a : antennas) {
        if (a.id == id) return a;
    }
    throw validation_error("config references unknown antenna '" + id + "'");
}

double Config::boxcar_window_m() const {
    if (boxcar == "off") return 0.0;
    if (boxcar == "auto") return 0.5 * wavelength(grid.center_hz());
    const double w = parse_quantity(boxcar, "length");
    if (!(w > 0.0)) throw validation_error("config: boxcar window must be > 0");
    return w;
}

}  // namespace ffgain::config
