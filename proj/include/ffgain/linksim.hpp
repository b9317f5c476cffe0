#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ffgain/types.hpp"

namespace ffgain::linksim {

enum class aperture_field { uniform, cosine_taper };
enum class sim_mode {
    physical,     // spherical-wave integral over both apertures
    ideal_friis,  // textbook link with the analytic antenna gains
};

aperture_field aperture_field_from_string(const std::string& s);
sim_mode sim_mode_from_string(const std::string& s);
std::string to_string(aperture_field f);
std::string to_string(sim_mode m);

// Knobs of the synthetic link: integration density, standing-wave ripple,
// per-run measurement noise.
struct CouplingModel {
    aperture_field field = aperture_field::uniform;
    sim_mode mode = sim_mode::physical;
    double quadrature_points_per_wavelength = 2.0;  // must be >= 2
    bool ripple = false;
    double ripple_amplitude_db = 0.05;
    // Ripple term: amplitude * sin(4*pi*d / ripple_wavelength) dB, i.e. one
    // period every half wavelength. 0 = use the grid's band-center wavelength.
    double ripple_wavelength = 0.0;
    double noise_sigma_db = 0.0;
    std::uint64_t seed = 1;
    bool emit_phase = false;
};

// Complex coupling coefficient between two boresight-aligned rectangular
// apertures separated by d. Normalized such that
// lim_{d->inf} |c|^2 * (4*pi*d/lambda)^2 = G1*G2 with G the analytic
// aperture gain. The kernel uses the exact point-to-point distance
// sqrt(d^2 + dx^2 + dy^2).
std::complex<double> aperture_coupling(const ApertureAntenna& a1,
                                       const ApertureAntenna& a2, double d,
                                       double frequency_hz,
                                       const CouplingModel& model);

// |coupling|^2 * (4*pi*d/lambda)^2 in dB: the gain product the Friis
// inversion would report at distance d.
double coupled_gain_product_db(const ApertureAntenna& a1, const ApertureAntenna& a2,
                               double d, double frequency_hz,
                               const CouplingModel& model);

// Boresight gain of a single aperture: 4*pi*A/lambda^2 for the uniform
// field, numerically integrated taper factor for cosine_taper.
double analytic_gain(const ApertureAntenna& a, double frequency_hz,
                     aperture_field field = aperture_field::uniform);

// Full synthetic campaign: every pair x cluster x run gets a SweepTrace from
// the coupling model plus configured ripple and per-run noise. Deterministic
// for a fixed seed, independent of the thread count.
Campaign synthesize_campaign(const std::vector<ApertureAntenna>& antennas,
                             const std::map<PairKey, std::vector<Cluster>>& clusters,
                             const FrequencyGrid& grid, const CouplingModel& model,
                             std::size_t runs);

namespace detail {

// Exact ray length between aperture points offset transversally by (dx, dy).
double exact_ray_length(double d, double dx, double dy);

// Spherical-wave kernel e^{-jkr}/r with r the exact ray length.
std::complex<double> spherical_kernel(double k, double d, double dx, double dy);

// Quadrature point count along one aperture dimension.
std::size_t points_along(double size, double lambda, double points_per_wavelength);

}  // namespace detail

}  // namespace ffgain::linksim
