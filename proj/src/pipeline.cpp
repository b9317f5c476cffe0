#include "ffgain/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ffgain/errors.hpp"
#include "ffgain/ffcrit.hpp"
#include "ffgain/linksim.hpp"
#include "ffgain/stats.hpp"

namespace ffgain::pipeline {

namespace {

GainSolution assemble_solution(const stats::DatasetB& points, const config::Config& cfg,
                               solve_method method) {
    GainSolution out;
    out.grid = points.grid;
    out.method = method;
    const auto means = stats::mean_gain_db(points);
    const auto sigmas = stats::sigma_f(points, cfg.std_kind);
    for (std::size_t a = 0; a < 3; ++a) {
        GainSolution::PerAntenna pa;
        pa.id = points.ids[a];
        pa.gain_db = means[a];
        pa.sigma_f = sigmas[a];
        out.antennas.push_back(std::move(pa));
    }
    return out;
}

const char* verdict(double start_distance, double required) {
    return start_distance >= required ? "pass" : "fail";
}

}  // namespace

Campaign load_or_synthesize_campaign(const config::Config& cfg) {
    if (!cfg.campaign_file.empty()) {
        return io::parse_campaign(io::read_file(cfg.campaign_file));
    }
    return linksim::synthesize_campaign(cfg.antennas, cfg.pair_clusters(), cfg.grid,
                                        cfg.model, cfg.runs);
}

Campaign load_or_synthesize_sweep(const config::Config& cfg) {
    if (!cfg.sweep_file.empty()) {
        return io::parse_campaign(io::read_file(cfg.sweep_file));
    }
    return linksim::synthesize_campaign(cfg.antennas, cfg.sweep_segments(), cfg.grid,
                                        cfg.model, cfg.runs);
}

std::vector<GainSolution> solve_clusters(const Campaign& campaign,
                                         const config::Config& cfg) {
    campaign.validate();
    const auto keys = campaign.pair_keys();
    std::vector<GainSolution> out;
    for (std::size_t c = 0; c < campaign.cluster_count(); ++c) {
        std::array<stats::DatasetA, 3> averaged;
        for (std::size_t i = 0; i < 3; ++i) {
            averaged[i] = stats::average_runs(campaign.traces.at(keys[i])[c],
                                              cfg.average_domain);
        }
        const stats::DatasetB points = stats::per_point_gains(averaged, cfg.solver_mode);
        out.push_back(assemble_solution(points, cfg, solve_method::ccm));
    }
    return out;
}

SweepResult extrapolate_sweep(const Campaign& sweep, const config::Config& cfg) {
    sweep.validate();
    const auto keys = sweep.pair_keys();
    const double window = cfg.boxcar_window_m();
    const std::size_t n_f = sweep.grid.count;
    const std::size_t center_f = n_f / 2;

    SweepResult result;
    result.diagnostics.add_column("pair");
    result.diagnostics.add_column("asymptote_db", 2);
    result.diagnostics.add_column("rms_residual_db", 4);
    result.diagnostics.add_column("span_ratio", 2);
    result.diagnostics.add_column("span_note");

    std::array<std::vector<extrapolate::ExtrapolationFit>, 3> fits;
    for (std::size_t i = 0; i < 3; ++i) {
        // Collapse repetition runs, then merge the overlapping segments.
        std::vector<SweepTrace> segments;
        for (const auto& runs : sweep.traces.at(keys[i])) {
            const stats::DatasetA mean = stats::average_runs(runs, cfg.average_domain);
            SweepTrace seg;
            seg.pair = mean.pair;
            seg.run_index = 0;
            seg.grid = mean.grid;
            seg.distances = mean.distances;
            seg.s21 = mean.mean_s21;
            segments.push_back(std::move(seg));
        }
        SweepTrace stitched = extrapolate::stitch_clusters(segments);
        if (window > 0.0) stitched = extrapolate::boxcar_average(stitched, window);
        fits[i] = extrapolate::fit_trace(stitched, cfg.fit_order);

        const auto& center = fits[i][center_f];
        result.diagnostics.begin_row();
        result.diagnostics.cell_text(keys[i].first + "-" + keys[i].second);
        result.diagnostics.cell(center.asymptote_gain_product_db);
        result.diagnostics.cell(center.rms_residual_db);
        result.diagnostics.cell(center.span_ratio);
        result.diagnostics.cell_text(center.span_warning ? "below recommended 3:1" : "ok");
    }

    GainSolution solution;
    solution.grid = sweep.grid;
    solution.method = solve_method::extrapolation;
    std::array<std::pair<PairKey, extrapolate::ExtrapolationFit>, 3> triple;
    for (std::size_t i = 0; i < 3; ++i) triple[i].first = keys[i];
    // Resolve ids once via the first frequency.
    for (std::size_t i = 0; i < 3; ++i) triple[i].second = fits[i][0];
    const auto first = extrapolate::extrapolated_three_antenna(triple);
    for (std::size_t a = 0; a < 3; ++a) {
        GainSolution::PerAntenna pa;
        pa.id = first.ids[a];
        pa.gain_db.assign(n_f, 0.0);
        pa.sigma_f.assign(n_f, std::nan(""));
        solution.antennas.push_back(std::move(pa));
    }
    for (std::size_t f = 0; f < n_f; ++f) {
        for (std::size_t i = 0; i < 3; ++i) triple[i].second = fits[i][f];
        const auto gains = extrapolate::extrapolated_three_antenna(triple);
        for (std::size_t a = 0; a < 3; ++a) {
            solution.antennas[a].gain_db[f] = gains.gain_db(a);
        }
    }
    result.solution = std::move(solution);
    return result;
}

io::Table ffdist_table(const config::Config& cfg, double frequency_hz) {
    if (!(frequency_hz > 0.0)) throw validation_error("frequency must be > 0");
    const double lambda = wavelength(frequency_hz);

    io::Table t;
    t.add_column("pair");
    t.add_column("d_ff_cm", 1);
    t.add_column("d_ff_mil_cm", 1);
    t.add_column("d_ff_uno_cm", 1);
    t.add_column("d_ff_rev_cm", 1);
    t.add_column("notes");

    // Distinct aperture pairings over all unordered antenna combinations
    // (self-pairings included so single-model rows appear once).
    std::set<std::pair<double, double>> seen;
    for (std::size_t i = 0; i < cfg.antennas.size(); ++i) {
        for (std::size_t j = i; j < cfg.antennas.size(); ++j) {
            const double d1 = cfg.antennas[i].diagonal();
            const double d2 = cfg.antennas[j].diagonal();
            if (d1 == 0.0 && d2 == 0.0) continue;  // degenerate probe-probe pairing
            const auto signature = std::minmax(d1, d2);
            if (!seen.insert(signature).second) continue;

            const double d_ff = ffcrit::d_fraunhofer(std::max(d1, d2), lambda);
            const auto mil = ffcrit::d_ff_mil(d1, d2, lambda);
            t.begin_row();
            t.cell_text(cfg.antennas[i].id + "-" + cfg.antennas[j].id);
            t.cell(d_ff * 100.0);
            t.cell(mil.distance * 100.0);
            t.cell(ffcrit::d_ff_uno(d1, d2, lambda) * 100.0);
            t.cell(ffcrit::d_ff_revised(d1, d2, lambda) * 100.0);
            t.cell_text(mil.applicable ? "" : "mil outside stated scope");
        }
    }
    return t;
}

io::Table plan_table(const config::Config& cfg, double frequency_hz) {
    if (!(frequency_hz > 0.0)) throw validation_error("frequency must be > 0");
    const double lambda = wavelength(frequency_hz);

    io::Table t;
    t.add_column("pair");
    t.add_column("cluster");
    t.add_column("start_cm", 1);
    t.add_column("stop_cm", 1);
    t.add_column("count");
    t.add_column("delta_phi_max_deg", 1);
    t.add_column("ff");
    t.add_column("mil");
    t.add_column("fourth");
    t.add_column("rev");
    t.add_column("uno");

    const auto clusters = cfg.pair_clusters();
    for (const auto& pair : cfg.pairs) {
        const double d1 = cfg.antenna(pair.key.first).diagonal();
        const double d2 = cfg.antenna(pair.key.second).diagonal();
        const double d_ff = ffcrit::d_fraunhofer(std::max(d1, d2), lambda);
        const auto mil = ffcrit::d_ff_mil(d1, d2, lambda);
        const double fourth = ffcrit::d_ff_fourth_order(d1, d2, lambda);
        const double rev = ffcrit::d_ff_revised(d1, d2, lambda);
        const double uno = ffcrit::d_ff_uno(d1, d2, lambda);

        const auto& list = clusters.at(pair.key);
        for (std::size_t c = 0; c < list.size(); ++c) {
            const Cluster& cluster = list[c];
            const double start = cluster.distance_at(0);
            t.begin_row();
            t.cell_text(pair.key.first + "-" + pair.key.second);
            t.cell(c + 1);
            t.cell(start * 100.0);
            t.cell(cluster.stop_distance() * 100.0);
            t.cell(cluster.count);
            t.cell(degrees_from_radians(
                ffcrit::delta_phi_max(d1, d2, lambda, cluster.midpoint_distance())));
            t.cell_text(verdict(start, d_ff));
            t.cell_text(mil.applicable ? verdict(start, mil.distance)
                                       : std::string(verdict(start, mil.distance)) + "*");
            t.cell_text(verdict(start, fourth));
            t.cell_text(verdict(start, rev));
            t.cell_text(verdict(start, uno));
        }
    }
    return t;
}

io::Table solve_table(const std::vector<GainSolution>& per_cluster) {
    io::Table t;
    t.add_column("antenna");
    t.add_column("cluster");
    t.add_column("frequency_hz");
    t.add_column("gain_db", 2);
    for (std::size_t c = 0; c < per_cluster.size(); ++c) {
        for (const auto& a : per_cluster[c].antennas) {
            for (std::size_t f = 0; f < per_cluster[c].grid.count; ++f) {
                t.begin_row();
                t.cell_text(a.id);
                t.cell(c + 1);
                t.cell(per_cluster[c].grid.at(f));
                t.cell(a.gain_db[f]);
            }
        }
    }
    return t;
}

io::Table stats_table(const std::vector<GainSolution>& per_cluster) {
    io::Table t;
    t.add_column("antenna");
    t.add_column("cluster");
    t.add_column("frequency_hz");
    t.add_column("gain_db", 2);
    t.add_column("sigma_f_db", 4);
    for (std::size_t c = 0; c < per_cluster.size(); ++c) {
        for (const auto& a : per_cluster[c].antennas) {
            for (std::size_t f = 0; f < per_cluster[c].grid.count; ++f) {
                t.begin_row();
                t.cell_text(a.id);
                t.cell(c + 1);
                t.cell(per_cluster[c].grid.at(f));
                t.cell(a.gain_db[f]);
                t.cell(a.sigma_f[f]);
            }
        }
    }
    return t;
}

io::Table compare_table(const GainSolution& ccm, const GainSolution& extrapolated) {
    io::Table t;
    t.add_column("antenna");
    t.add_column("ccm_gain_db", 2);
    t.add_column("extrapolated_gain_db", 2);
    t.add_column("delta_db", 3);
    t.add_column("abs_delta_db", 3);
    for (const auto& a : ccm.antennas) {
        const GainSolution::PerAntenna* other = nullptr;
        for (const auto& b : extrapolated.antennas) {
            if (b.id == a.id) other = &b;
        }
        if (!other) {
            throw validation_error("comparison methods disagree on antenna '" + a.id + "'");
        }
        auto mean_of = [](const std::vector<double>& v) {
            double acc = 0.0;
            std::size_t n = 0;
            for (double x : v) {
                if (!std::isnan(x)) {
                    acc += x;
                    ++n;
                }
            }
            return n ? acc / static_cast<double>(n) : std::nan("");
        };
        const double g_ccm = mean_of(a.gain_db);
        const double g_ext = mean_of(other->gain_db);
        t.begin_row();
        t.cell_text(a.id);
        t.cell(g_ccm);
        t.cell(g_ext);
        t.cell(g_ccm - g_ext);
        t.cell(std::abs(g_ccm - g_ext));
    }
    return t;
}

}  // namespace ffgain::pipeline
