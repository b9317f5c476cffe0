#include "ffgain/linksim.hpp"

#include <algorithm>
#include <cmath>

#include "ffgain/errors.hpp"
#include "ffgain/parallel.hpp"
#include "ffgain/quadrature.hpp"
#include "ffgain/rng.hpp"
#include "ffgain/solver.hpp"

namespace ffgain::linksim {

namespace {

void require_aperture(const ApertureAntenna& a) {
    if (!(a.aperture_width > 0.0) || !(a.aperture_height > 0.0)) {
        throw validation_error("antenna '" + a.id + "': simulation needs positive apertures");
    }
}

void require_density(const CouplingModel& model) {
    if (!(model.quadrature_points_per_wavelength >= 2.0)) {
        throw validation_error(
            "quadrature density " + std::to_string(model.quadrature_points_per_wavelength) +
            " points/wavelength is under-resolved; >= 2 required");
    }
}

// One aperture dimension prepared for integration: nodes, weights and the
// (normalized) field factor at each node.
struct Axis {
    std::vector<double> nodes;
    std::vector<double> wf;  // weight * field factor
};

Axis make_axis(double size, double lambda, double ppw, bool tapered) {
    const std::size_t n = detail::points_along(size, lambda, ppw);
    quadrature::Rule rule = quadrature::gauss_legendre(n, -0.5 * size, 0.5 * size);
    Axis axis;
    axis.nodes = std::move(rule.nodes);
    axis.wf.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double field = tapered ? std::cos(pi * axis.nodes[i] / size) : 1.0;
        axis.wf[i] = rule.weights[i] * field;
    }
    return axis;
}

// 1/sqrt of the aperture-integrated |field|^2, making the field unit-power:
// uniform integrates to w*h, the cosine taper to w*h/2.
double power_norm(const ApertureAntenna& a, aperture_field field) {
    const double p = field == aperture_field::cosine_taper ? 0.5 * a.area() : a.area();
    return 1.0 / std::sqrt(p);
}

}  // namespace

namespace detail {

double exact_ray_length(double d, double dx, double dy) {
    return std::sqrt(d * d + dx * dx + dy * dy);
}

std::complex<double> spherical_kernel(double k, double d, double dx, double dy) {
    const double r = exact_ray_length(d, dx, dy);
    return std::polar(1.0 / r, -k * r);
}

std::size_t points_along(double size, double lambda, double points_per_wavelength) {
    const double need = std::ceil(points_per_wavelength * size / lambda);
    return std::max<std::size_t>(8, static_cast<std::size_t>(need));
}

}  // namespace detail

aperture_field aperture_field_from_string(const std::string& s) {
    if (s == "uniform") return aperture_field::uniform;
    if (s == "cosine_taper") return aperture_field::cosine_taper;
    throw validation_error("unknown aperture field '" + s + "'");
}

sim_mode sim_mode_from_string(const std::string& s) {
    if (s == "physical") return sim_mode::physical;
    if (s == "ideal_friis") return sim_mode::ideal_friis;
    throw validation_error("unknown simulation mode '" + s + "'");
}

std::string to_string(aperture_field f) {
    return f == aperture_field::uniform ? "uniform" : "cosine_taper";
}

std::string to_string(sim_mode m) {
    return m == sim_mode::physical ? "physical" : "ideal_friis";
}

std::complex<double> aperture_coupling(const ApertureAntenna& a1,
                                       const ApertureAntenna& a2, double d,
                                       double frequency_hz, const CouplingModel& model) {
    require_aperture(a1);
    require_aperture(a2);
    require_density(model);
    if (!(d > 0.0)) throw validation_error("distance must be > 0");
    if (!(frequency_hz > 0.0)) throw validation_error("frequency must be > 0");

    const double lambda = wavelength(frequency_hz);
    const double k = 2.0 * pi / lambda;
    const double ppw = model.quadrature_points_per_wavelength;
    const bool taper = model.field == aperture_field::cosine_taper;

    // The taper (when enabled) runs along the width axis of each aperture.
    const Axis x1 = make_axis(a1.aperture_width, lambda, ppw, taper);
    const Axis y1 = make_axis(a1.aperture_height, lambda, ppw, false);
    const Axis x2 = make_axis(a2.aperture_width, lambda, ppw, taper);
    const Axis y2 = make_axis(a2.aperture_height, lambda, ppw, false);

    // Transverse y-offsets and combined y-weights, hoisted out of the x loops.
    const std::size_t ny = y1.nodes.size() * y2.nodes.size();
    std::vector<double> dy2(ny), wy(ny);
    for (std::size_t j = 0; j < y1.nodes.size(); ++j) {
        for (std::size_t q = 0; q < y2.nodes.size(); ++q) {
            const double dy = y1.nodes[j] - y2.nodes[q];
            dy2[j * y2.nodes.size() + q] = dy * dy;
            wy[j * y2.nodes.size() + q] = y1.wf[j] * y2.wf[q];
        }
    }

    const double d2 = d * d;
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < x1.nodes.size(); ++i) {
        for (std::size_t p = 0; p < x2.nodes.size(); ++p) {
            const double dx = x1.nodes[i] - x2.nodes[p];
            const double base = d2 + dx * dx;
            const double wx = x1.wf[i] * x2.wf[p];
            std::complex<double> inner(0.0, 0.0);
            for (std::size_t t = 0; t < ny; ++t) {
                const double r = std::sqrt(base + dy2[t]);
                inner += wy[t] * std::polar(1.0 / r, -k * r);
            }
            acc += wx * inner;
        }
    }
    return acc * (power_norm(a1, model.field) * power_norm(a2, model.field) / lambda);
}

double coupled_gain_product_db(const ApertureAntenna& a1, const ApertureAntenna& a2,
                               double d, double frequency_hz,
                               const CouplingModel& model) {
    const std::complex<double> c = aperture_coupling(a1, a2, d, frequency_hz, model);
    const double lambda = wavelength(frequency_hz);
    return db_from_linear_mag(std::abs(c) * 4.0 * pi * d / lambda);
}

double analytic_gain(const ApertureAntenna& a, double frequency_hz,
                     aperture_field field) {
    require_aperture(a);
    if (!(frequency_hz > 0.0)) throw validation_error("frequency must be > 0");
    const double lambda = wavelength(frequency_hz);
    const double uniform = 4.0 * pi * a.area() / (lambda * lambda);
    if (field == aperture_field::uniform) return uniform;
    // Cosine taper along one axis: aperture efficiency 8/pi^2.
    return uniform * 8.0 / (pi * pi);
}

Campaign synthesize_campaign(const std::vector<ApertureAntenna>& antennas,
                             const std::map<PairKey, std::vector<Cluster>>& clusters,
                             const FrequencyGrid& grid, const CouplingModel& model,
                             std::size_t runs) {
    require_density(model);
    if (runs < 1) throw validation_error("campaign needs at least one run");
    if (antennas.size() != 3) throw validation_error("campaign needs exactly three antennas");
    for (const auto& a : antennas) require_aperture(a);

    Campaign campaign;
    campaign.antennas = antennas;
    campaign.grid = grid;
    campaign.clusters = clusters;

    const auto keys = campaign.pair_keys();
    const std::size_t n_clusters = clusters.empty() ? 0 : clusters.begin()->second.size();
    if (n_clusters == 0) throw validation_error("campaign needs at least one cluster");
    for (const auto& key : keys) {
        auto it = clusters.find(key);
        if (it == clusters.end()) throw validation_error("missing clusters for pair " + key.label());
        if (it->second.size() != n_clusters) {
            throw validation_error("pair " + key.label() + ": cluster count mismatch");
        }
    }

    const double ripple_lambda = model.ripple_wavelength > 0.0
                                     ? model.ripple_wavelength
                                     : wavelength(grid.center_hz());
    const std::size_t n_f = grid.count;

    // Analytic per-frequency gains, used by the ideal mode.
    std::array<std::vector<double>, 3> ideal_gain;
    if (model.mode == sim_mode::ideal_friis) {
        for (std::size_t a = 0; a < 3; ++a) {
            ideal_gain[a].resize(n_f);
            for (std::size_t f = 0; f < n_f; ++f) {
                ideal_gain[a][f] = analytic_gain(antennas[a], grid.at(f), model.field);
            }
        }
    }

    // Pre-size every trace so parallel workers write disjoint slots.
    struct PairCtx {
        PairKey key;
        const ApertureAntenna* a1 = nullptr;
        const ApertureAntenna* a2 = nullptr;
        std::size_t idx1 = 0, idx2 = 0;
    };
    std::vector<PairCtx> pair_ctx;
    for (const auto& key : keys) {
        PairCtx ctx;
        ctx.key = key;
        for (std::size_t a = 0; a < 3; ++a) {
            if (antennas[a].id == key.first) { ctx.a1 = &antennas[a]; ctx.idx1 = a; }
            if (antennas[a].id == key.second) { ctx.a2 = &antennas[a]; ctx.idx2 = a; }
        }
        pair_ctx.push_back(ctx);
    }

    std::vector<std::size_t> task_offsets;  // flattened (pair, cluster) -> m base
    std::size_t n_tasks = 0;
    for (std::size_t p = 0; p < pair_ctx.size(); ++p) {
        const auto& pair_clusters = clusters.at(pair_ctx[p].key);
        auto& lists = campaign.traces[pair_ctx[p].key];
        lists.resize(n_clusters);
        for (std::size_t c = 0; c < n_clusters; ++c) {
            const Cluster& cl = pair_clusters[c];
            task_offsets.push_back(n_tasks);
            n_tasks += cl.count;
            lists[c].resize(runs);
            for (std::size_t r = 0; r < runs; ++r) {
                SweepTrace& tr = lists[c][r];
                tr.pair = pair_ctx[p].key;
                tr.run_index = static_cast<int>(r);
                tr.grid = grid;
                tr.distances = cl.distances();
                tr.s21.assign(cl.count * n_f, 0.0);
                if (model.emit_phase) tr.phase.assign(cl.count * n_f, 0.0);
            }
        }
    }

    // One task = one (pair, cluster, m) row over all frequencies and runs.
    parallel::parallel_for(n_tasks, [&](std::size_t task) {
        // Recover (pair, cluster, m) from the flat task index.
        std::size_t slot = 0;
        while (slot + 1 < task_offsets.size() && task_offsets[slot + 1] <= task) ++slot;
        const std::size_t p = slot / n_clusters;
        const std::size_t c = slot % n_clusters;
        const std::size_t m = task - task_offsets[slot];

        const PairCtx& ctx = pair_ctx[p];
        const Cluster& cl = clusters.at(ctx.key)[c];
        auto& run_traces = campaign.traces.at(ctx.key)[c];
        const double d = cl.distance_at(m);

        for (std::size_t f = 0; f < n_f; ++f) {
            const double freq = grid.at(f);
            double mag0;
            double phase0 = 0.0;
            if (model.mode == sim_mode::ideal_friis) {
                mag0 = std::sqrt(solver::friis_s21(ideal_gain[ctx.idx1][f],
                                                   ideal_gain[ctx.idx2][f],
                                                   wavelength(freq), d));
                phase0 = -2.0 * pi / wavelength(freq) * d;
            } else {
                const std::complex<double> coup =
                    aperture_coupling(*ctx.a1, *ctx.a2, d, freq, model);
                mag0 = std::abs(coup);
                phase0 = std::arg(coup);
            }
            double db_offset = 0.0;
            if (model.ripple) {
                db_offset = model.ripple_amplitude_db *
                            std::sin(4.0 * pi * d / ripple_lambda);
            }
            for (std::size_t r = 0; r < runs; ++r) {
                double db = db_offset;
                if (model.noise_sigma_db > 0.0) {
                    const std::uint64_t bits = rng::hash(model.seed, p, c, r, m, f);
                    db += model.noise_sigma_db * rng::standard_normal(bits);
                }
                run_traces[r].s21[m * n_f + f] = mag0 * linear_mag_from_db(db);
                if (model.emit_phase) {
                    run_traces[r].phase[m * n_f + f] =
                        std::remainder(phase0, 2.0 * pi);
                }
            }
        }
    });

    campaign.validate();
    return campaign;
}

}  // namespace ffgain::linksim
