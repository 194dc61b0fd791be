#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "casimir/params.hpp"

namespace casimir {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix2r = Eigen::Matrix2d;

// Basis ordering throughout: index 0 = |g>, index 1 = |e>.
inline constexpr int kGround = 0;
inline constexpr int kExcited = 1;

// Density matrix of the representative two-level system.
struct ElectronicDensityMatrix {
    Matrix2c rho = ground_state();

    static Matrix2c ground_state() {
        Matrix2c m = Matrix2c::Zero();
        m(kGround, kGround) = 1.0;
        return m;
    }

    Complex trace() const { return rho.trace(); }
    double excited_population() const { return rho(kExcited, kExcited).real(); }
    Complex coherence_eg() const { return rho(kExcited, kGround); }
};

// Quantum electronic state plus the classical cavity, bright-mode and dark-mode
// phase-space variables.
struct SystemState {
    ElectronicDensityMatrix rho;
    double q_c = 0.0;
    double p_c = 0.0;
    double q_B = 0.0;
    double p_B = 0.0;
    std::vector<double> q_D;
    std::vector<double> p_D;
    std::vector<double> omega_D;
    double t = 0.0;

    bool all_finite() const;
};

// Single-molecule dipole operator with diagonal (d_gg, d_ee) and off-diagonal d_eg.
Matrix2r electronic_dipole_matrix(const Params& p);

// Re Tr(rho mu_e) for one molecule.
double mean_electronic_dipole(const Matrix2c& rho, const Params& p);

// sqrt(n_v) d_v q_B + n_e Re Tr(rho mu_e). Throws std::domain_error when the
// trace has an imaginary part above 1e-10 (rho not Hermitian).
double mean_total_dipole(const SystemState& s, const Params& p);

// E(t) = E0 sin(omega_e t) exp(-(t - t_start)^2 / sigma^2)
double pulse_field(double t, const PulseParams& pulse, double omega_e);

// Mean-field single-TLS Hamiltonian including the pulse coupling
// d_eg E(t) (sigma_+ + sigma_-).
Matrix2c effective_hamiltonian(const SystemState& s, const Params& p, double t);

std::vector<double> dark_frequencies(const Params& p);

// Global ground state with the cavity coordinate displaced by the ground-state
// polarization.
SystemState initial_state(const Params& p);

}  // namespace casimir
