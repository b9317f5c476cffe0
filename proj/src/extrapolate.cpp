#include "ffgain/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ffgain/errors.hpp"
#include "ffgain/parallel.hpp"

namespace ffgain::extrapolate {

namespace {

bool same_distance(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

// Solves the (k x k) normal-equation system in extended precision with
// partial pivoting. Throws numeric_error when the matrix is singular.
std::vector<double> solve_normal_equations(std::vector<long double> a,
                                           std::vector<long double> b,
                                           std::size_t k) {
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < k; ++row) {
            if (std::abs(static_cast<double>(a[row * k + col])) >
                std::abs(static_cast<double>(a[pivot * k + col]))) {
                pivot = row;
            }
        }
        if (a[pivot * k + col] == 0.0L) {
            throw numeric_error("rank-deficient design matrix in 1/d fit");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < k; ++j) std::swap(a[col * k + j], a[pivot * k + j]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t row = col + 1; row < k; ++row) {
            const long double factor = a[row * k + col] / a[col * k + col];
            for (std::size_t j = col; j < k; ++j) a[row * k + j] -= factor * a[col * k + j];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(k);
    for (std::size_t i = k; i-- > 0;) {
        long double acc = b[i];
        for (std::size_t j = i + 1; j < k; ++j) acc -= a[i * k + j] * x[j];
        x[i] = static_cast<double>(acc / a[i * k + i]);
    }
    return x;
}

}  // namespace

SweepTrace stitch_clusters(const std::vector<SweepTrace>& segments) {
    if (segments.empty()) throw validation_error("stitch: no segments given");
    for (const SweepTrace& s : segments) s.validate();
    const SweepTrace& ref = segments.front();
    for (const SweepTrace& s : segments) {
        if (!(s.pair == ref.pair)) {
            throw validation_error("stitch: segments mix pairs " + ref.pair.label() +
                                   " and " + s.pair.label());
        }
        if (s.grid.count != ref.grid.count) {
            throw validation_error("stitch: segments disagree on the frequency grid");
        }
    }
    if (segments.size() == 1) return segments.front();

    // Work on pointers sorted by start distance so the result cannot depend
    // on the caller's ordering.
    std::vector<const SweepTrace*> order(segments.size());
    for (std::size_t i = 0; i < segments.size(); ++i) order[i] = &segments[i];
    std::sort(order.begin(), order.end(), [](const SweepTrace* a, const SweepTrace* b) {
        return a->distances.front() < b->distances.front();
    });

    const std::size_t n_f = ref.grid.count;

    // dB offset of each segment relative to the previous one, least squares
    // over all overlapping (distance, frequency) samples = mean difference.
    std::vector<double> shift(order.size(), 0.0);
    for (std::size_t s = 1; s < order.size(); ++s) {
        const SweepTrace& prev = *order[s - 1];
        const SweepTrace& cur = *order[s];
        double acc = 0.0;
        std::size_t count = 0;
        std::size_t points = 0;
        for (std::size_t mp = 0; mp < prev.distances.size(); ++mp) {
            for (std::size_t mc = 0; mc < cur.distances.size(); ++mc) {
                if (!same_distance(prev.distances[mp], cur.distances[mc])) continue;
                ++points;
                for (std::size_t f = 0; f < n_f; ++f) {
                    const double a = prev.at(mp, f);
                    const double b = cur.at(mc, f);
                    if (a > 0.0 && b > 0.0) {
                        acc += db_from_linear_mag(a) - db_from_linear_mag(b);
                        ++count;
                    }
                }
            }
        }
        if (points < 2) {
            std::ostringstream msg;
            msg << "stitch: segments do not overlap between " << prev.distances.back()
                << " m and " << cur.distances.front() << " m (need >= 2 shared points)";
            throw validation_error(msg.str());
        }
        shift[s] = shift[s - 1] + (count ? acc / static_cast<double>(count) : 0.0);
    }
    // Re-center so the stitched level is the average of the segment levels
    // instead of being pinned to the first segment.
    const double mean_shift =
        std::accumulate(shift.begin(), shift.end(), 0.0) / static_cast<double>(shift.size());
    for (double& v : shift) v -= mean_shift;

    // Merge: offset-corrected linear magnitudes, duplicates averaged.
    struct Row {
        double distance;
        std::size_t segment;
        std::size_t m;
    };
    std::vector<Row> rows;
    for (std::size_t s = 0; s < order.size(); ++s) {
        for (std::size_t m = 0; m < order[s]->distances.size(); ++m) {
            rows.push_back({order[s]->distances[m], s, m});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.segment < b.segment;
    });

    SweepTrace out;
    out.pair = ref.pair;
    out.run_index = ref.run_index;
    out.grid = ref.grid;
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i + 1;
        while (j < rows.size() && same_distance(rows[i].distance, rows[j].distance)) ++j;
        out.distances.push_back(rows[i].distance);
        for (std::size_t f = 0; f < n_f; ++f) {
            double acc = 0.0;
            for (std::size_t r = i; r < j; ++r) {
                const SweepTrace& seg = *order[rows[r].segment];
                acc += seg.at(rows[r].m, f) * linear_mag_from_db(shift[rows[r].segment]);
            }
            out.s21.push_back(acc / static_cast<double>(j - i));
        }
        i = j;
    }
    out.validate();
    return out;
}

SweepTrace boxcar_average(const SweepTrace& trace, double window_m) {
    trace.validate();
    if (!(window_m > 0.0)) throw validation_error("boxcar window must be > 0");
    const std::size_t n_m = trace.distances.size();
    const std::size_t n_f = trace.grid.count;

    double min_step = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m + 1 < n_m; ++m) {
        min_step = std::min(min_step, trace.distances[m + 1] - trace.distances[m]);
    }
    if (!(window_m >= 2.0 * min_step)) return trace;  // too narrow to matter

    SweepTrace out = trace;
    const double half = 0.5 * window_m;
    std::size_t lo = 0, hi = 0;
    for (std::size_t m = 0; m < n_m; ++m) {
        while (lo < n_m && trace.distances[lo] < trace.distances[m] - half) ++lo;
        while (hi < n_m && trace.distances[hi] <= trace.distances[m] + half) ++hi;
        const double inv = 1.0 / static_cast<double>(hi - lo);
        for (std::size_t f = 0; f < n_f; ++f) {
            double acc = 0.0;
            for (std::size_t r = lo; r < hi; ++r) acc += trace.at(r, f);
            out.s21[m * n_f + f] = acc * inv;
        }
    }
    return out;
}

ExtrapolationFit fit_inverse_distance(const std::vector<double>& distances,
                                      const std::vector<double>& s21_mag,
                                      double lambda, int order,
                                      const std::vector<double>* weights) {
    if (order < 0 || order > 4) throw validation_error("fit order must be in [0, 4]");
    if (!(lambda > 0.0)) throw validation_error("wavelength must be > 0");
    const std::size_t n = distances.size();
    if (s21_mag.size() != n) throw validation_error("fit: array lengths differ");
    if (weights && weights->size() != n) throw validation_error("fit: weight length differs");
    const std::size_t k = static_cast<std::size_t>(order) + 1;
    if (n < k + 1) {
        throw validation_error("fit needs at least order+2 points, got " +
                               std::to_string(n));
    }

    // De-embed free space: y = |S21| dB + path loss dB.
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(distances[i] > 0.0)) throw validation_error("fit: distances must be > 0");
        if (!(s21_mag[i] > 0.0)) throw validation_error("fit: magnitudes must be > 0");
        y[i] = db_from_linear_mag(s21_mag[i]) + solver::path_loss_db(distances[i], lambda);
    }

    // Weighted normal equations for the basis (1/d)^j, accumulated in
    // extended precision.
    std::vector<long double> ata(k * k, 0.0L), atb(k, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weights ? (*weights)[i] : 1.0;
        long double powers[5];
        powers[0] = 1.0L;
        for (std::size_t j = 1; j < k; ++j) powers[j] = powers[j - 1] / distances[i];
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) ata[r * k + c] += w * powers[r] * powers[c];
            atb[r] += w * powers[r] * y[i];
        }
    }
    ExtrapolationFit fit;
    fit.coefficients = solve_normal_equations(std::move(ata), std::move(atb), k);
    fit.asymptote_gain_product_db = fit.coefficients[0];

    double wsum = 0.0, rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weights ? (*weights)[i] : 1.0;
        double model = 0.0;
        double p = 1.0;
        for (std::size_t j = 0; j < k; ++j) {
            model += fit.coefficients[j] * p;
            p /= distances[i];
        }
        const double r = y[i] - model;
        rss += w * r * r;
        wsum += w;
    }
    fit.rms_residual_db = std::sqrt(rss / wsum);
    const auto [dmin, dmax] = std::minmax_element(distances.begin(), distances.end());
    fit.span_ratio = *dmax / *dmin;
    fit.span_warning = fit.span_ratio < 3.0;
    return fit;
}

std::vector<ExtrapolationFit> fit_trace(const SweepTrace& trace, int order) {
    trace.validate();
    const std::size_t n_f = trace.grid.count;
    const std::size_t n_m = trace.distances.size();
    std::vector<ExtrapolationFit> fits(n_f);
    parallel::parallel_for(n_f, [&](std::size_t f) {
        std::vector<double> column(n_m);
        for (std::size_t m = 0; m < n_m; ++m) column[m] = trace.at(m, f);
        fits[f] = fit_inverse_distance(trace.distances, column,
                                       wavelength(trace.grid.at(f)), order);
    });
    return fits;
}

solver::ThreeAntennaGains extrapolated_three_antenna(
    const std::array<std::pair<PairKey, ExtrapolationFit>, 3>& fits) {
    std::array<solver::PairProductDb, 3> products;
    for (std::size_t i = 0; i < 3; ++i) {
        products[i].pair = fits[i].first;
        products[i].product_db = fits[i].second.asymptote_gain_product_db;
    }
    return solver::solve_from_products_db(products);
}

}  // namespace ffgain::extrapolate
