#include "ffgain/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ffgain/errors.hpp"

namespace ffgain::solver {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw validation_error(std::string(what) + " must be > 0");
}

// Resolves the three sorted antenna ids and, for each antenna, the indices of
// the two measurements it participates in plus the opposite one.
struct Triangle {
    std::array<std::string, 3> ids;
    // with[i] = the two measurement indices containing ids[i];
    // opposite[i] = the measurement not containing ids[i].
    std::array<std::array<std::size_t, 2>, 3> with;
    std::array<std::size_t, 3> opposite;
};

Triangle resolve_triangle(const std::array<PairMeasurement, 3>& pairs) {
    std::set<std::string> id_set;
    for (const auto& p : pairs) {
        id_set.insert(p.pair.first);
        id_set.insert(p.pair.second);
    }
    if (id_set.size() != 3) {
        throw validation_error("three-antenna solve needs a complete triangle over "
                               "exactly three ids, got " + std::to_string(id_set.size()));
    }
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            if (pairs[i].pair == pairs[j].pair) {
                throw validation_error("duplicated pair " + pairs[i].pair.label());
            }
        }
    }
    Triangle t;
    std::copy(id_set.begin(), id_set.end(), t.ids.begin());
    for (std::size_t i = 0; i < 3; ++i) {
        std::size_t n_with = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            const bool in_pair = pairs[j].pair.first == t.ids[i] ||
                                 pairs[j].pair.second == t.ids[i];
            if (in_pair) {
                t.with[i][n_with++] = j;
            } else {
                t.opposite[i] = j;
            }
        }
        if (n_with != 2) {
            throw validation_error("antenna '" + t.ids[i] +
                                   "' does not appear in exactly two pairs");
        }
    }
    return t;
}

std::array<double, 3> resolve_path_loss(const std::array<PairMeasurement, 3>& pairs,
                                        double lambda, pl_mode mode) {
    std::array<double, 3> pl{};
    if (mode == pl_mode::averaged_pl) {
        const double avg = averaged_path_loss_db(pairs[0].distance, pairs[1].distance,
                                                 pairs[2].distance, lambda);
        pl.fill(avg);
    } else {
        for (std::size_t i = 0; i < 3; ++i) {
            pl[i] = path_loss_db(pairs[i].distance, lambda);
        }
    }
    return pl;
}

void validate_measurements(const std::array<PairMeasurement, 3>& pairs, double lambda) {
    require_positive(lambda, "wavelength");
    for (const auto& p : pairs) {
        require_positive(p.distance, ("distance of pair " + p.pair.label()).c_str());
        if (!(p.s21_sq_linear > 0.0) || !std::isfinite(p.s21_sq_linear)) {
            throw validation_error("pair " + p.pair.label() +
                                   ": |S21|^2 must be finite and > 0");
        }
    }
}

}  // namespace

double path_loss_db(double d, double lambda) {
    require_positive(d, "distance");
    require_positive(lambda, "wavelength");
    return db_from_linear_mag(4.0 * pi * d / lambda);
}

double friis_s21(double gt_linear, double gr_linear, double lambda, double d) {
    require_positive(gt_linear, "transmit gain");
    require_positive(gr_linear, "receive gain");
    require_positive(lambda, "wavelength");
    require_positive(d, "distance");
    const double factor = lambda / (4.0 * pi * d);
    return gt_linear * gr_linear * factor * factor;
}

double pair_gain_product(double s21_sq_linear, double d, double lambda) {
    require_positive(s21_sq_linear, "|S21|^2");
    require_positive(d, "distance");
    require_positive(lambda, "wavelength");
    const double factor = 4.0 * pi * d / lambda;
    return s21_sq_linear * factor * factor;
}

double averaged_path_loss_db(double d_ab, double d_ac, double d_bc, double lambda) {
    require_positive(d_ab, "distance");
    require_positive(d_ac, "distance");
    require_positive(d_bc, "distance");
    return path_loss_db((d_ab + d_ac + d_bc) / 3.0, lambda);
}

pl_mode pl_mode_from_string(const std::string& s) {
    if (s == "exact_pl") return pl_mode::exact_pl;
    if (s == "averaged_pl") return pl_mode::averaged_pl;
    throw validation_error("unknown path-loss mode '" + s + "'");
}

std::string to_string(pl_mode m) {
    return m == pl_mode::exact_pl ? "exact_pl" : "averaged_pl";
}

double ThreeAntennaGains::for_id(const std::string& id) const {
    for (std::size_t i = 0; i < 3; ++i) {
        if (ids[i] == id) return gain_linear[i];
    }
    throw validation_error("unknown antenna id '" + id + "'");
}

ThreeAntennaGains solve_three_antenna(const std::array<PairMeasurement, 3>& pairs,
                                      double lambda, pl_mode mode) {
    validate_measurements(pairs, lambda);
    const auto pl = resolve_path_loss(pairs, lambda, mode);

    // Pair gain products in dB: P_xy = |S21,xy|^2 [dB] + PL_xy.
    std::array<PairProductDb, 3> products;
    for (std::size_t i = 0; i < 3; ++i) {
        products[i].pair = pairs[i].pair;
        products[i].product_db = db_from_linear_power(pairs[i].s21_sq_linear) + pl[i];
    }
    return solve_from_products_db(products);
}

ThreeAntennaGains solve_from_products_db(const std::array<PairProductDb, 3>& products) {
    std::array<PairMeasurement, 3> dummy;
    for (std::size_t i = 0; i < 3; ++i) dummy[i].pair = products[i].pair;
    const Triangle t = resolve_triangle(dummy);

    // Closed form of the 3x3 dB system: each antenna gets half the sum of its
    // two pair products minus the opposite one.
    ThreeAntennaGains out;
    out.ids = t.ids;
    for (std::size_t i = 0; i < 3; ++i) {
        const double g_db = 0.5 * (products[t.with[i][0]].product_db +
                                   products[t.with[i][1]].product_db -
                                   products[t.opposite[i]].product_db);
        out.gain_linear[i] = linear_power_from_db(g_db);
    }
    return out;
}

namespace detail {

ThreeAntennaGains solve_product_ratio_form(const std::array<PairMeasurement, 3>& pairs,
                                           double lambda, pl_mode mode) {
    validate_measurements(pairs, lambda);
    const Triangle t = resolve_triangle(pairs);
    const double d_mean =
        (pairs[0].distance + pairs[1].distance + pairs[2].distance) / 3.0;

    std::array<double, 3> product{};
    for (std::size_t i = 0; i < 3; ++i) {
        // Linear pair gain product with the mode's path-loss convention.
        const double d = mode == pl_mode::averaged_pl ? d_mean : pairs[i].distance;
        product[i] = pair_gain_product(pairs[i].s21_sq_linear, d, lambda);
    }
    ThreeAntennaGains out;
    out.ids = t.ids;
    for (std::size_t i = 0; i < 3; ++i) {
        out.gain_linear[i] = std::sqrt(product[t.with[i][0]] * product[t.with[i][1]] /
                                       product[t.opposite[i]]);
    }
    return out;
}

}  // namespace detail

}  // namespace ffgain::solver
