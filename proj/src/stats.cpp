#include "ffgain/stats.hpp"

#include <cmath>
#include <limits>

#include "ffgain/errors.hpp"
#include "ffgain/parallel.hpp"

namespace ffgain::stats {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

average_domain average_domain_from_string(const std::string& s) {
    if (s == "linear") return average_domain::linear;
    if (s == "db") return average_domain::db;
    throw validation_error("unknown averaging domain '" + s + "'");
}

std_kind std_kind_from_string(const std::string& s) {
    if (s == "population") return std_kind::population;
    if (s == "sample") return std_kind::sample;
    throw validation_error("unknown standard-deviation kind '" + s + "'");
}

DatasetA average_runs(const std::vector<SweepTrace>& runs, average_domain domain) {
    if (runs.empty()) throw validation_error("average_runs: no traces given");
    const SweepTrace& first = runs.front();
    for (const SweepTrace& tr : runs) {
        if (!(tr.pair == first.pair)) {
            throw validation_error("average_runs: traces mix pairs " + first.pair.label() +
                                   " and " + tr.pair.label());
        }
        if (tr.s21.size() != first.s21.size() || tr.distances != first.distances ||
            tr.grid.count != first.grid.count) {
            throw validation_error("average_runs: trace shapes differ for pair " +
                                   first.pair.label());
        }
    }

    DatasetA out;
    out.pair = first.pair;
    out.grid = first.grid;
    out.distances = first.distances;
    out.runs = runs.size();
    out.mean_s21.assign(first.s21.size(), 0.0);
    const double inv_n = 1.0 / static_cast<double>(runs.size());
    if (domain == average_domain::linear) {
        for (const SweepTrace& tr : runs) {
            for (std::size_t i = 0; i < tr.s21.size(); ++i) out.mean_s21[i] += tr.s21[i];
        }
        for (double& v : out.mean_s21) v *= inv_n;
    } else {
        // dB-domain mean; zero magnitudes poison the point into a zero (gap
        // downstream) rather than propagating -inf.
        for (std::size_t i = 0; i < first.s21.size(); ++i) {
            double acc = 0.0;
            bool valid = true;
            for (const SweepTrace& tr : runs) {
                if (!(tr.s21[i] > 0.0)) { valid = false; break; }
                acc += db_from_linear_mag(tr.s21[i]);
            }
            out.mean_s21[i] = valid ? linear_mag_from_db(acc * inv_n) : 0.0;
        }
    }
    return out;
}

DatasetB per_point_gains(const std::array<DatasetA, 3>& pairs, solver::pl_mode mode) {
    const std::size_t n_m = pairs[0].distances.size();
    const std::size_t n_f = pairs[0].grid.count;
    for (const DatasetA& p : pairs) {
        if (p.distances.size() != n_m || p.grid.count != n_f) {
            throw validation_error("per_point_gains: pair shapes differ");
        }
    }

    // Resolve the id triple once; also validates the triangle.
    std::array<solver::PairProductDb, 3> probe;
    for (std::size_t i = 0; i < 3; ++i) probe[i].pair = pairs[i].pair;
    const auto ids = solver::solve_from_products_db(probe).ids;

    DatasetB out;
    out.ids = ids;
    out.grid = pairs[0].grid;
    out.point_count = n_m;
    for (auto& g : out.gain_db) g.assign(n_m * n_f, nan);
    out.gap.assign(n_m * n_f, 0);

    parallel::parallel_for(n_m, [&](std::size_t m) {
        for (std::size_t f = 0; f < n_f; ++f) {
            std::array<solver::PairMeasurement, 3> meas;
            bool ok = true;
            for (std::size_t i = 0; i < 3; ++i) {
                const double mag = pairs[i].at(m, f);
                if (!(mag > 0.0) || !std::isfinite(mag)) {
                    ok = false;
                    break;
                }
                meas[i].pair = pairs[i].pair;
                meas[i].s21_sq_linear = mag * mag;
                meas[i].distance = pairs[i].distances[m];
            }
            if (!ok) {
                out.gap[m * n_f + f] = 1;
                continue;
            }
            const auto gains =
                solver::solve_three_antenna(meas, wavelength(out.grid.at(f)), mode);
            for (std::size_t a = 0; a < 3; ++a) {
                out.gain_db[a][m * n_f + f] = gains.gain_db(a);
            }
        }
    });
    return out;
}

std::array<std::vector<double>, 3> sigma_f(const DatasetB& data, std_kind kind) {
    std::array<std::vector<double>, 3> out;
    const std::size_t n_f = data.grid.count;
    const std::size_t n_m = data.point_count;
    for (auto& v : out) v.assign(n_f, nan);

    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t f = 0; f < n_f; ++f) {
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t m = 0; m < n_m; ++m) {
                if (data.gap[m * n_f + f]) continue;
                sum += data.at(a, m, f);
                ++count;
            }
            if (count < 2) continue;  // undefined, stays NaN
            const double mean = sum / static_cast<double>(count);
            double ss = 0.0;
            for (std::size_t m = 0; m < n_m; ++m) {
                if (data.gap[m * n_f + f]) continue;
                const double dev = data.at(a, m, f) - mean;
                ss += dev * dev;
            }
            const double divisor = kind == std_kind::population
                                       ? static_cast<double>(count)
                                       : static_cast<double>(count - 1);
            out[a][f] = std::sqrt(ss / divisor);
        }
    }
    return out;
}

std::array<std::vector<double>, 3> mean_gain_db(const DatasetB& data) {
    std::array<std::vector<double>, 3> out;
    const std::size_t n_f = data.grid.count;
    const std::size_t n_m = data.point_count;
    for (auto& v : out) v.assign(n_f, nan);
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t f = 0; f < n_f; ++f) {
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t m = 0; m < n_m; ++m) {
                if (data.gap[m * n_f + f]) continue;
                sum += data.at(a, m, f);
                ++count;
            }
            if (count > 0) out[a][f] = sum / static_cast<double>(count);
        }
    }
    return out;
}

}  // namespace ffgain::stats
