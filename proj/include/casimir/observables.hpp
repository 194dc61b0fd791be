#pragma once

#include <limits>
#include <span>
#include <stdexcept>

#include "casimir/dynamics.hpp"
#include "casimir/model.hpp"

namespace casimir {

// Component energies in a.u. E_c is measured from the polarized minimum,
// i.e. with the displaced coordinate q_c + lambda_c <mu> / omega_c.
struct EnergyReport {
    double E_e = 0.0;
    double E_c = 0.0;
    double E_B = 0.0;
    double E_D = 0.0;
};

EnergyReport energies(const SystemState& s, const Params& p);

// E_e + E_c + E_B + E_D + gamma_v q_B sum_k q_D,k: the mean-field energy with
// the dipole self-energy evaluated as <mu>^2.
double total_energy(const SystemState& s, const Params& p);

double excited_population(const Matrix2c& rho);

struct PolaritonPair {
    double omega_minus = 0.0;
    double omega_plus = 0.0;
    double splitting = 0.0;
    // angle of the lower eigenvector measured from the bright-mode axis
    double mixing_angle = 0.0;
    // Hessian of the (q_c, q_B) quadratic form, for invariants
    double k_cc = 0.0, k_cb = 0.0, k_bb = 0.0;
};

class ObservableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Normal modes of the cavity/bright-mode pair with the electrons frozen in
// the ground configuration.
PolaritonPair polariton_frequencies(const Params& p);

struct RabiEstimate {
    double period_fs = 0.0;
    double splitting_cm1 = 0.0;
    double splitting_au = 0.0;
    double lower_au = 0.0;
    double upper_au = 0.0;
    double bin_au = 0.0;  // spectral resolution 2 pi / window length
    bool from_spectrum = true;
};

// Spectrum of the post-pulse bright-mode coordinate on a uniform time grid.
struct Spectrum {
    std::vector<double> omega;
    std::vector<double> power;
    double bin = 0.0;
};

// Rectangular-window DFT power of the mean-removed signal on bins k * 2 pi / T
// up to min(omega_max, Nyquist).
Spectrum dft_power(std::span<const double> times, std::span<const double> values, double omega_max);

struct SpectralPeak {
    double omega = 0.0;
    double power = 0.0;
};

// Local maxima at or above `floor_fraction` of the largest bin (bins below
// `first_bin` ignored), strongest first, with parabolic interpolation.
std::vector<SpectralPeak> spectral_peaks(const Spectrum& spec, std::size_t first_bin, double floor_fraction);

RabiEstimate rabi_splitting(std::span<const double> times, std::span<const double> q_B,
                            std::span<const double> E_B, double t_begin);

// Uses the trajectory's post-pulse window (t > t_start + 5 sigma).
RabiEstimate rabi_splitting_from_trajectory(const Trajectory& traj);

struct LifetimeFit {
    double tau = std::numeric_limits<double>::infinity();
    double slope = 0.0;
    double r_squared = 0.0;
    bool low_confidence = false;
};

// Line fit of ln(values) against time; tau = -1/slope. A non-negative slope
// yields tau = +inf and a low-confidence flag.
LifetimeFit fit_exponential_lifetime(std::span<const double> times, std::span<const double> values);

}  // namespace casimir
