#include "ffgain/ffcrit.hpp"

#include <cmath>

#include "ffgain/errors.hpp"

namespace ffgain::ffcrit {

namespace {

void require_lambda(double lambda) {
    if (!(lambda > 0.0)) throw validation_error("wavelength must be > 0");
}

void require_apertures(double D1, double D2) {
    if (!(D1 >= 0.0) || !(D2 >= 0.0)) throw validation_error("aperture size must be >= 0");
    if (D1 == 0.0 && D2 == 0.0) throw validation_error("at least one aperture must be > 0");
}

void require_distance(double d) {
    if (!(d > 0.0)) throw validation_error("distance must be > 0");
}

}  // namespace

double d_fraunhofer(double D, double lambda) {
    require_lambda(lambda);
    if (!(D > 0.0)) throw validation_error("aperture size must be > 0");
    return 2.0 * D * D / lambda;
}

double d_ff_fourth_order(double D1, double D2, double lambda) {
    require_lambda(lambda);
    require_apertures(D1, D2);
    return 2.0 / lambda * std::sqrt(D1 * D1 * D1 * D1 + D2 * D2 * D2 * D2);
}

double d_ff_revised(double D1, double D2, double lambda) {
    require_lambda(lambda);
    require_apertures(D1, D2);
    return 2.0 * (D1 * D1 + D2 * D2) / lambda;
}

double d_ff_uno(double D1, double D2, double lambda) {
    require_lambda(lambda);
    require_apertures(D1, D2);
    const double s = D1 + D2;
    return 2.0 * s * s / lambda;
}

MilDistance d_ff_mil(double D1, double D2, double lambda) {
    require_lambda(lambda);
    require_apertures(D1, D2);
    MilDistance r;
    r.distance = (D1 * D1 + D2 * D2) / lambda;
    r.applicable = std::min(D1, D2) > std::max(D1, D2) / 10.0;
    return r;
}

double path_difference(double D, double d) {
    require_distance(d);
    if (!(D >= 0.0)) throw validation_error("aperture size must be >= 0");
    return D * D / (8.0 * d);
}

double phase_error(double delta_r, double lambda) {
    require_lambda(lambda);
    return 2.0 * pi * delta_r / lambda;
}

double phase_total(double D1, double D2, double lambda, double d) {
    require_lambda(lambda);
    require_distance(d);
    return pi / (4.0 * lambda * d) * std::sqrt(D1 * D1 * D1 * D1 + D2 * D2 * D2 * D2);
}

double delta_phi_max(double D1, double D2, double lambda, double d) {
    require_lambda(lambda);
    require_distance(d);
    return pi * (D1 * D1 + D2 * D2) / (4.0 * lambda * d);
}

double approximation_ratio(double D1, double D2) {
    require_apertures(D1, D2);
    return (D1 * D1 + D2 * D2) / std::sqrt(D1 * D1 * D1 * D1 + D2 * D2 * D2 * D2);
}

PhaseBudget phase_budget(double D1, double D2, double lambda, double d) {
    PhaseBudget b;
    b.delta_r1 = path_difference(D1, d);
    b.delta_r2 = path_difference(D2, d);
    b.phi_error1 = phase_error(b.delta_r1, lambda);
    b.phi_error2 = phase_error(b.delta_r2, lambda);
    b.phi_total = phase_total(D1, D2, lambda, d);
    b.delta_phi_max = delta_phi_max(D1, D2, lambda, d);
    return b;
}

}  // namespace ffgain::ffcrit
