// Python bindings for the gain toolkit. Enum-valued knobs are exposed as the
// same strings the config format uses; library errors surface as ValueError.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ffgain/config.hpp"
#include "ffgain/errors.hpp"
#include "ffgain/ffcrit.hpp"
#include "ffgain/io.hpp"
#include "ffgain/linksim.hpp"
#include "ffgain/pipeline.hpp"
#include "ffgain/solver.hpp"
#include "ffgain/stats.hpp"
#include "ffgain/types.hpp"
#include "ffgain/units.hpp"

namespace py = pybind11;
using namespace ffgain;

namespace {

using PairTuple = std::pair<std::string, std::string>;
using ClusterMap = std::map<PairTuple, std::vector<Cluster>>;

std::map<PairKey, std::vector<Cluster>> to_pair_map(const ClusterMap& clusters) {
    std::map<PairKey, std::vector<Cluster>> out;
    for (const auto& [ids, list] : clusters) {
        out[PairKey(ids.first, ids.second)] = list;
    }
    return out;
}

py::dict gains_as_dict(const solver::ThreeAntennaGains& gains) {
    py::dict out;
    for (std::size_t i = 0; i < 3; ++i) {
        out[py::str(gains.ids[i])] = gains.gain_db(i);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_ffgain, m) {
    m.doc() = "Compact-cluster three-antenna gain toolkit";

    py::register_exception<validation_error>(m, "ValidationError",
                                             PyExc_ValueError);
    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);

    // ---- units -------------------------------------------------------
    m.def("wavelength", &wavelength, py::arg("frequency_hz"));
    m.def("parse_quantity", &parse_quantity, py::arg("text"),
          py::arg("dimension"),
          "Parse '170 GHz' / '22.678 mm' style strings to SI units");
    m.def("db_from_linear_power", &db_from_linear_power, py::arg("p"));
    m.def("linear_power_from_db", &linear_power_from_db, py::arg("db"));
    m.def("db_from_linear_mag", &db_from_linear_mag, py::arg("m"));
    m.def("linear_mag_from_db", &linear_mag_from_db, py::arg("db"));

    // ---- geometry ----------------------------------------------------
    py::class_<ApertureAntenna>(m, "ApertureAntenna")
        .def(py::init<std::string, double, double>(), py::arg("id"),
             py::arg("width_m"), py::arg("height_m"))
        .def_readonly("id", &ApertureAntenna::id)
        .def_readonly("width_m", &ApertureAntenna::aperture_width)
        .def_readonly("height_m", &ApertureAntenna::aperture_height)
        .def_property_readonly("diagonal_m", &ApertureAntenna::diagonal)
        .def_property_readonly("area_m2", &ApertureAntenna::area)
        .def("__repr__", [](const ApertureAntenna& a) {
            return "ApertureAntenna('" + a.id + "', " +
                   io::format_double(a.aperture_width) + ", " +
                   io::format_double(a.aperture_height) + ")";
        });

    py::class_<FrequencyGrid>(m, "FrequencyGrid")
        .def(py::init<double, double, std::size_t>(), py::arg("start_hz"),
             py::arg("stop_hz"), py::arg("count"))
        .def_readonly("start_hz", &FrequencyGrid::start_hz)
        .def_readonly("stop_hz", &FrequencyGrid::stop_hz)
        .def_readonly("count", &FrequencyGrid::count)
        .def("at", &FrequencyGrid::at, py::arg("index"))
        .def_property_readonly("center_hz", &FrequencyGrid::center_hz)
        .def("frequencies", [](const FrequencyGrid& g) {
            std::vector<double> out(g.count);
            for (std::size_t i = 0; i < g.count; ++i) out[i] = g.at(i);
            return out;
        });

    py::class_<Cluster>(m, "Cluster")
        .def(py::init<double, double, std::size_t, double>(), py::arg("start_m"),
             py::arg("step_m"), py::arg("count"), py::arg("offset_m") = 0.0)
        .def_readonly("start_m", &Cluster::start_distance)
        .def_readonly("step_m", &Cluster::step)
        .def_readonly("count", &Cluster::count)
        .def_readonly("offset_m", &Cluster::pair_offset)
        .def("distance_at", &Cluster::distance_at, py::arg("index"))
        .def_property_readonly("midpoint_m", &Cluster::midpoint_distance)
        .def("distances", &Cluster::distances);

    // ---- far-field criteria ------------------------------------------
    m.def("d_fraunhofer", &ffcrit::d_fraunhofer, py::arg("D"), py::arg("lam"));
    m.def("d_ff_fourth_order", &ffcrit::d_ff_fourth_order, py::arg("D1"),
          py::arg("D2"), py::arg("lam"));
    m.def("d_ff_revised", &ffcrit::d_ff_revised, py::arg("D1"), py::arg("D2"),
          py::arg("lam"));
    m.def("d_ff_uno", &ffcrit::d_ff_uno, py::arg("D1"), py::arg("D2"),
          py::arg("lam"));
    m.def(
        "d_ff_mil",
        [](double d1, double d2, double lam) {
            const auto r = ffcrit::d_ff_mil(d1, d2, lam);
            return py::make_tuple(r.distance, r.applicable);
        },
        py::arg("D1"), py::arg("D2"), py::arg("lam"),
        "Returns (distance_m, applicable)");
    m.def("path_difference", &ffcrit::path_difference, py::arg("D"),
          py::arg("d"));
    m.def("phase_error", &ffcrit::phase_error, py::arg("delta_r"),
          py::arg("lam"));
    m.def("phase_total", &ffcrit::phase_total, py::arg("D1"), py::arg("D2"),
          py::arg("lam"), py::arg("d"));
    m.def("delta_phi_max", &ffcrit::delta_phi_max, py::arg("D1"), py::arg("D2"),
          py::arg("lam"), py::arg("d"));
    m.def("approximation_ratio", &ffcrit::approximation_ratio, py::arg("D1"),
          py::arg("D2"));
    m.def(
        "phase_budget",
        [](double d1, double d2, double lam, double d) {
            const auto b = ffcrit::phase_budget(d1, d2, lam, d);
            py::dict out;
            out["delta_r1"] = b.delta_r1;
            out["delta_r2"] = b.delta_r2;
            out["phi_error1"] = b.phi_error1;
            out["phi_error2"] = b.phi_error2;
            out["phi_total"] = b.phi_total;
            out["delta_phi_max"] = b.delta_phi_max;
            return out;
        },
        py::arg("D1"), py::arg("D2"), py::arg("lam"), py::arg("d"));

    // ---- link solver ---------------------------------------------------
    m.def("path_loss_db", &solver::path_loss_db, py::arg("d"), py::arg("lam"));
    m.def("friis_s21", &solver::friis_s21, py::arg("gt_linear"),
          py::arg("gr_linear"), py::arg("lam"), py::arg("d"),
          "Returns |S21|^2 of the textbook link");
    m.def("averaged_path_loss_db", &solver::averaged_path_loss_db,
          py::arg("d_ab"), py::arg("d_ac"), py::arg("d_bc"), py::arg("lam"));
    m.def(
        "solve_three_antenna",
        [](const std::vector<std::tuple<std::string, std::string, double, double>>&
               measurements,
           double lam, const std::string& mode) {
            if (measurements.size() != 3) {
                throw validation_error("exactly three pair measurements required");
            }
            std::array<solver::PairMeasurement, 3> pairs;
            for (std::size_t i = 0; i < 3; ++i) {
                const auto& [id1, id2, s21_sq, d] = measurements[i];
                pairs[i] = {PairKey(id1, id2), s21_sq, d};
            }
            return gains_as_dict(solver::solve_three_antenna(
                pairs, lam, solver::pl_mode_from_string(mode)));
        },
        py::arg("measurements"), py::arg("lam"), py::arg("mode") = "exact_pl",
        "measurements: three (id1, id2, s21_squared_linear, distance_m) tuples;"
        " returns {id: gain_db}");

    // ---- coupling simulator -------------------------------------------
    py::class_<linksim::CouplingModel>(m, "CouplingModel")
        .def(py::init<>())
        .def_property(
            "field",
            [](const linksim::CouplingModel& c) { return to_string(c.field); },
            [](linksim::CouplingModel& c, const std::string& s) {
                c.field = linksim::aperture_field_from_string(s);
            })
        .def_property(
            "mode",
            [](const linksim::CouplingModel& c) { return to_string(c.mode); },
            [](linksim::CouplingModel& c, const std::string& s) {
                c.mode = linksim::sim_mode_from_string(s);
            })
        .def_readwrite("quadrature_points_per_wavelength",
                       &linksim::CouplingModel::quadrature_points_per_wavelength)
        .def_readwrite("ripple", &linksim::CouplingModel::ripple)
        .def_readwrite("ripple_amplitude_db",
                       &linksim::CouplingModel::ripple_amplitude_db)
        .def_readwrite("ripple_wavelength",
                       &linksim::CouplingModel::ripple_wavelength)
        .def_readwrite("noise_sigma_db", &linksim::CouplingModel::noise_sigma_db)
        .def_readwrite("seed", &linksim::CouplingModel::seed)
        .def_readwrite("emit_phase", &linksim::CouplingModel::emit_phase);

    m.def("aperture_coupling", &linksim::aperture_coupling, py::arg("a1"),
          py::arg("a2"), py::arg("d"), py::arg("frequency_hz"),
          py::arg("model") = linksim::CouplingModel{});
    m.def(
        "coupled_gain_product_db",
        [](const ApertureAntenna& a1, const ApertureAntenna& a2, double d,
           double f, const linksim::CouplingModel& model) {
            return linksim::coupled_gain_product_db(a1, a2, d, f, model);
        },
        py::arg("a1"), py::arg("a2"), py::arg("d"), py::arg("frequency_hz"),
        py::arg("model") = linksim::CouplingModel{});
    m.def(
        "analytic_gain",
        [](const ApertureAntenna& a, double f, const std::string& field) {
            return linksim::analytic_gain(
                a, f, linksim::aperture_field_from_string(field));
        },
        py::arg("antenna"), py::arg("frequency_hz"),
        py::arg("field") = "uniform");

    // ---- traces and campaigns -----------------------------------------
    py::class_<SweepTrace>(m, "SweepTrace")
        .def_property_readonly(
            "pair",
            [](const SweepTrace& t) {
                return py::make_tuple(t.pair.first, t.pair.second);
            })
        .def_readonly("run_index", &SweepTrace::run_index)
        .def_readonly("grid", &SweepTrace::grid)
        .def_readonly("distances", &SweepTrace::distances)
        .def_readonly("s21", &SweepTrace::s21)
        .def_readonly("phase", &SweepTrace::phase)
        .def("at", [](const SweepTrace& t, std::size_t m_idx,
                      std::size_t f_idx) { return t.at(m_idx, f_idx); });

    py::class_<Campaign>(m, "Campaign")
        .def_property_readonly(
            "antennas", [](const Campaign& c) { return c.antennas; })
        .def_readonly("grid", &Campaign::grid)
        .def_property_readonly("cluster_count", &Campaign::cluster_count)
        .def_property_readonly("run_count", &Campaign::run_count)
        .def_property_readonly(
            "pairs",
            [](const Campaign& c) {
                std::vector<PairTuple> out;
                for (const auto& key : c.pair_keys()) {
                    out.emplace_back(key.first, key.second);
                }
                return out;
            })
        .def(
            "trace",
            [](const Campaign& c, const std::string& id1, const std::string& id2,
               std::size_t cluster, std::size_t run) {
                return c.traces.at(PairKey(id1, id2)).at(cluster).at(run);
            },
            py::arg("id1"), py::arg("id2"), py::arg("cluster") = 0,
            py::arg("run") = 0);

    m.def(
        "synthesize_campaign",
        [](const std::vector<ApertureAntenna>& antennas,
           const ClusterMap& clusters, const FrequencyGrid& grid,
           const linksim::CouplingModel& model, std::size_t runs) {
            return linksim::synthesize_campaign(antennas, to_pair_map(clusters),
                                                grid, model, runs);
        },
        py::arg("antennas"), py::arg("clusters"), py::arg("grid"),
        py::arg("model") = linksim::CouplingModel{}, py::arg("runs") = 1,
        "clusters: {(id1, id2): [Cluster, ...]}");

    m.def("parse_trace",
          [](const std::string& text) { return io::parse_trace(text); },
          py::arg("text"));
    m.def("emit_trace", &io::emit_trace, py::arg("trace"), py::arg("cluster"));
    m.def("parse_campaign",
          [](const std::string& text) { return io::parse_campaign(text); },
          py::arg("text"));
    m.def("emit_campaign", &io::emit_campaign, py::arg("campaign"));
    m.def(
        "vna_csv_to_trace",
        [](const std::string& text, const std::string& id1,
           const std::string& id2, double distance_m, int run_index) {
            return io::vna_csv_to_trace(text, PairKey(id1, id2), distance_m,
                                        run_index);
        },
        py::arg("text"), py::arg("id1"), py::arg("id2"), py::arg("distance_m"),
        py::arg("run_index") = 0);

    // ---- results -------------------------------------------------------
    py::class_<io::Table>(m, "Table")
        .def("to_csv", &io::Table::to_csv)
        .def("to_aligned", &io::Table::to_aligned)
        .def("__str__", &io::Table::to_aligned);

    py::class_<GainSolution::PerAntenna>(m, "PerAntennaGain")
        .def_readonly("id", &GainSolution::PerAntenna::id)
        .def_readonly("gain_db", &GainSolution::PerAntenna::gain_db)
        .def_readonly("sigma_f", &GainSolution::PerAntenna::sigma_f);

    py::class_<GainSolution>(m, "GainSolution")
        .def_readonly("grid", &GainSolution::grid)
        .def_readonly("antennas", &GainSolution::antennas)
        .def_property_readonly("method", [](const GainSolution& s) {
            return s.method == solve_method::ccm ? "ccm" : "extrapolation";
        });

    // ---- config-driven pipeline ----------------------------------------
    py::class_<config::Config>(m, "Config")
        .def_property_readonly(
            "antennas", [](const config::Config& c) { return c.antennas; })
        .def_readonly("grid", &config::Config::grid)
        .def_readonly("runs", &config::Config::runs)
        .def_readonly("ccm_cluster", &config::Config::ccm_cluster)
        .def_readonly("model", &config::Config::model)
        .def_readwrite("campaign_file", &config::Config::campaign_file)
        .def_readwrite("sweep_file", &config::Config::sweep_file);

    m.def("load_config", &config::load, py::arg("path") = "",
          py::arg("overrides") = std::vector<std::string>{},
          "Built-in defaults, optionally merged with a JSON file and "
          "dotted-path key=value overrides");
    m.def("default_config_json", &config::default_document);

    m.def("load_or_synthesize_campaign", &pipeline::load_or_synthesize_campaign,
          py::arg("config"));
    m.def("load_or_synthesize_sweep", &pipeline::load_or_synthesize_sweep,
          py::arg("config"));
    m.def("solve_clusters", &pipeline::solve_clusters, py::arg("campaign"),
          py::arg("config"));
    m.def(
        "extrapolate_sweep",
        [](const Campaign& sweep, const config::Config& cfg) {
            auto result = pipeline::extrapolate_sweep(sweep, cfg);
            return py::make_tuple(result.solution, result.diagnostics);
        },
        py::arg("sweep"), py::arg("config"),
        "Returns (GainSolution, diagnostics Table)");
    m.def("ffdist_table", &pipeline::ffdist_table, py::arg("config"),
          py::arg("frequency_hz"));
    m.def("plan_table", &pipeline::plan_table, py::arg("config"),
          py::arg("frequency_hz"));
    m.def("solve_table", &pipeline::solve_table, py::arg("per_cluster"));
    m.def("stats_table", &pipeline::stats_table, py::arg("per_cluster"));
    m.def("compare_table", &pipeline::compare_table, py::arg("ccm"),
          py::arg("extrapolated"));
    m.def("report_table", &io::report_table, py::arg("solution"));
}
