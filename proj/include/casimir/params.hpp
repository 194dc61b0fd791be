#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace casimir {

// Thrown when a Params value violates a physical or numerical constraint.
// The message names the offending key.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DarkSampling { MidpointGrid, SeededUniform };

std::string to_string(DarkSampling s);
DarkSampling dark_sampling_from_string(const std::string& name);

// Gaussian-enveloped carrier at the electronic frequency.
struct PulseParams {
    double E0 = 0.01;
    double t_start = 500.0;
    double sigma = 100.0;

    bool operator==(const PulseParams&) const = default;
};

// All quantities in Hartree atomic units. Defaults are the reference
// parameter set of the collective electron/vibration/cavity model.
struct Params {
    // electronic two-level systems
    double omega_e = 0.1;
    double d_eg = 0.5;
    double d_gg = 0.0;
    double d_ee = 1.0;
    double n_e = 1e10;

    // vibrations
    double omega_v = 0.01;
    double d_v = 0.01;
    double n_v = 1e10;

    // cavity
    double omega_c = 0.01;
    double lambda_c = 2e-6;

    // relaxation
    double gamma_e = 1e-5;
    double gamma_c = 2e-5;
    double gamma_v_total = 2e-6;

    // explicit dark-mode bath
    int n_dark = 500;
    double dark_omega_min = 0.007;
    double dark_omega_max = 0.013;
    DarkSampling dark_sampling = DarkSampling::MidpointGrid;
    std::uint64_t seed = 0;

    PulseParams pulse;

    // coefficient of the vibrational/electronic cross term in the
    // single-TLS mean-field Hamiltonian; 1 or 2
    int cross_term_factor = 2;
    // coefficient of the (n_e - 1) collective mean-field term; 1 or 2
    int collective_term_factor = 2;

    // integrator
    double dt = 0.5;
    double t_final = 5000.0 / 0.02418884;  // 5 ps
    int record_stride = 50;

    double d_bar() const { return 0.5 * (d_gg + d_ee); }
    double delta_d() const { return d_ee - d_gg; }
    // bright/dark coupling after the 1/sqrt(n_dark) normalization
    double gamma_v() const;

    bool operator==(const Params&) const = default;
};

// Throws ValidationError naming the first violated constraint.
void validate(const Params& p);

}  // namespace casimir
