#pragma once

#include "ffgain/types.hpp"

namespace ffgain::ffcrit {

// Classical Fraunhofer distance 2*D^2/lambda for a single aperture of
// largest dimension D.
double d_fraunhofer(double D, double lambda);

// Two-aperture criterion keeping the wavefront deviation of both antennas
// combined in quadrature below lambda/16: (2/lambda)*sqrt(D1^4 + D2^4).
double d_ff_fourth_order(double D1, double D2, double lambda);

// Two-aperture criterion with both apertures contributing quadratically:
// 2*(D1^2 + D2^2)/lambda. Reduces to d_fraunhofer when one aperture is zero.
double d_ff_revised(double D1, double D2, double lambda);

// Both-horn criterion 2*(D1 + D2)^2/lambda.
double d_ff_uno(double D1, double D2, double lambda);

// Military-standard criterion (D1^2 + D2^2)/lambda. `applicable` reflects the
// standard's own scope note: the smaller aperture must exceed one tenth of
// the larger one. Advisory only; the distance is always computed.
struct MilDistance {
    double distance = 0.0;
    bool applicable = true;
};
MilDistance d_ff_mil(double D1, double D2, double lambda);

// Geometric path difference between the axial ray and the edge ray of an
// aperture of dimension D seen from distance d: D^2/(8 d).
double path_difference(double D, double d);

// Wavefront phase corresponding to a path difference: 2*pi*delta_r/lambda.
double phase_error(double delta_r, double lambda);

// Root-sum-square combination of the two single-aperture phase errors:
// (pi/(4*lambda*d))*sqrt(D1^4 + D2^4).
double phase_total(double D1, double D2, double lambda, double d);

// Worst-case total phase deviation when the two aperture contributions add
// up coherently: pi*(D1^2 + D2^2)/(4*lambda*d).
double delta_phi_max(double D1, double D2, double lambda, double d);

// Ratio d_ff_revised/d_ff_fourth_order = (D1^2+D2^2)/sqrt(D1^4+D2^4).
// Lies in [1, sqrt(2)]; 1 iff one aperture is zero, sqrt(2) iff equal.
double approximation_ratio(double D1, double D2);

// Full phase budget of a pair at distance d.
struct PhaseBudget {
    double delta_r1 = 0.0;        // meters, aperture 1 edge-ray path difference
    double delta_r2 = 0.0;        // meters, aperture 2
    double phi_error1 = 0.0;      // radians
    double phi_error2 = 0.0;      // radians
    double phi_total = 0.0;       // radians, RSS combination
    double delta_phi_max = 0.0;   // radians, worst-case coherent sum
};
PhaseBudget phase_budget(double D1, double D2, double lambda, double d);

}  // namespace ffgain::ffcrit
