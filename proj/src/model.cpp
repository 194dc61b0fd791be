#include "casimir/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace casimir {

bool SystemState::all_finite() const {
    auto ok = [](double v) { return std::isfinite(v); };
    for (int i = 0; i < 4; ++i) {
        const Complex z = rho.rho(i / 2, i % 2);
        if (!ok(z.real()) || !ok(z.imag())) return false;
    }
    if (!ok(q_c) || !ok(p_c) || !ok(q_B) || !ok(p_B) || !ok(t)) return false;
    return std::all_of(q_D.begin(), q_D.end(), ok) && std::all_of(p_D.begin(), p_D.end(), ok);
}

Matrix2r electronic_dipole_matrix(const Params& p) {
    Matrix2r mu;
    mu(kGround, kGround) = p.d_gg;
    mu(kExcited, kExcited) = p.d_ee;
    mu(kGround, kExcited) = p.d_eg;
    mu(kExcited, kGround) = p.d_eg;
    return mu;
}

double mean_electronic_dipole(const Matrix2c& rho, const Params& p) {
    return rho(kGround, kGround).real() * p.d_gg + rho(kExcited, kExcited).real() * p.d_ee +
           2.0 * p.d_eg * rho(kExcited, kGround).real();
}

double mean_total_dipole(const SystemState& s, const Params& p) {
    const Complex tr = (s.rho.rho * electronic_dipole_matrix(p).cast<Complex>()).trace();
    if (std::abs(tr.imag()) >= 1e-10) {
        throw std::domain_error("Tr(rho mu) has imaginary part " + std::to_string(tr.imag()));
    }
    return std::sqrt(p.n_v) * p.d_v * s.q_B + p.n_e * tr.real();
}

double pulse_field(double t, const PulseParams& pulse, double omega_e) {
    const double x = (t - pulse.t_start) / pulse.sigma;
    return pulse.E0 * std::sin(omega_e * t) * std::exp(-x * x);
}

Matrix2c effective_hamiltonian(const SystemState& s, const Params& p, double t) {
    const Matrix2r mu = electronic_dipole_matrix(p);
    const double mu_e = mean_electronic_dipole(s.rho.rho, p);
    const double mu_v = std::sqrt(p.n_v) * p.d_v * s.q_B;
    const double lc2 = p.lambda_c * p.lambda_c;

    // terms linear in mu: cavity displacement, collective mean field, vibrational cross term
    const double linear = p.omega_c * p.lambda_c * s.q_c +
                          0.5 * lc2 * (p.collective_term_factor * (p.n_e - 1.0) * mu_e +
                                       p.cross_term_factor * mu_v);

    Matrix2r h = linear * mu + 0.5 * lc2 * (mu * mu);
    h(kExcited, kExcited) += p.omega_e;
    const double drive = p.d_eg * pulse_field(t, p.pulse, p.omega_e);
    h(kGround, kExcited) += drive;
    h(kExcited, kGround) += drive;
    return h.cast<Complex>();
}

std::vector<double> dark_frequencies(const Params& p) {
    const int n = std::max(p.n_dark, 0);
    std::vector<double> omega(static_cast<std::size_t>(n));
    const double lo = p.dark_omega_min;
    const double hi = p.dark_omega_max;
    if (p.dark_sampling == DarkSampling::MidpointGrid) {
        const double width = (hi - lo) / n;
        for (int k = 0; k < n; ++k) omega[k] = lo + (k + 0.5) * width;
    } else {
        std::mt19937_64 rng(p.seed);
        std::uniform_real_distribution<double> uniform(lo, hi);
        for (auto& w : omega) w = uniform(rng);
        std::sort(omega.begin(), omega.end());
    }
    return omega;
}

SystemState initial_state(const Params& p) {
    SystemState s;
    s.q_c = -(p.lambda_c / p.omega_c) * p.n_e * p.d_gg;
    s.omega_D = dark_frequencies(p);
    s.q_D.assign(s.omega_D.size(), 0.0);
    s.p_D.assign(s.omega_D.size(), 0.0);
    return s;
}

}  // namespace casimir
