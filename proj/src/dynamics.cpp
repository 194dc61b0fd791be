#include "casimir/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "casimir/observables.hpp"

namespace casimir {

Matrix2c lindblad_dissipator(const Matrix2c& rho, double gamma_e) {
    // sigma_- rho sigma_+ = rho_ee |g><g|, sigma_+ sigma_- = |e><e|
    Matrix2c out;
    const Complex ee = rho(kExcited, kExcited);
    out(kGround, kGround) = gamma_e * ee;
    out(kExcited, kExcited) = -gamma_e * ee;
    out(kGround, kExcited) = -0.5 * gamma_e * rho(kGround, kExcited);
    out(kExcited, kGround) = -0.5 * gamma_e * rho(kExcited, kGround);
    return out;
}

namespace {

bool finite(const StateDerivative& d) {
    auto ok = [](double v) { return std::isfinite(v); };
    for (int i = 0; i < 4; ++i) {
        const Complex z = d.drho(i / 2, i % 2);
        if (!ok(z.real()) || !ok(z.imag())) return false;
    }
    if (!ok(d.dq_c) || !ok(d.dp_c) || !ok(d.dq_B) || !ok(d.dp_B)) return false;
    for (std::size_t k = 0; k < d.dq_D.size(); ++k) {
        if (!ok(d.dq_D[k]) || !ok(d.dp_D[k])) return false;
    }
    return true;
}

}  // namespace

void rhs_into(const SystemState& s, const Params& p, double t, StateDerivative& out) {
    const Matrix2c& rho = s.rho.rho;
    const Matrix2c h = effective_hamiltonian(s, p, t);
    out.drho = Complex(0.0, -1.0) * (h * rho - rho * h) + lindblad_dissipator(rho, p.gamma_e);

    const double vib_slope = std::sqrt(p.n_v) * p.d_v;  // d<mu>/dq_B
    const double mu = vib_slope * s.q_B + p.n_e * mean_electronic_dipole(rho, p);
    const double wl = p.omega_c * p.lambda_c;
    const double gamma_v = p.gamma_v();

    out.dq_c = s.p_c;
    out.dp_c = -p.omega_c * p.omega_c * s.q_c - wl * mu - p.gamma_c * s.p_c;

    const std::size_t n = s.q_D.size();
    out.dq_D.resize(n);
    out.dp_D.resize(n);
    double sum_q_dark = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = s.omega_D[k];
        out.dq_D[k] = s.p_D[k];
        out.dp_D[k] = -w * w * s.q_D[k] - gamma_v * s.q_B;
        sum_q_dark += s.q_D[k];
    }

    out.dq_B = s.p_B;
    out.dp_B = -p.omega_v * p.omega_v * s.q_B - wl * s.q_c * vib_slope -
               p.lambda_c * p.lambda_c * mu * vib_slope - gamma_v * sum_q_dark;

    if (!finite(out)) {
        std::ostringstream msg;
        msg << "non-finite derivative at t = " << t << " a.u.";
        throw IntegrationError(msg.str(), s.t);
    }
}

StateDerivative rhs(const SystemState& s, const Params& p, double t) {
    StateDerivative d;
    rhs_into(s, p, t, d);
    return d;
}

namespace {

// out = base + h * d, with out's arrays already sized like base's
void add_scaled(const SystemState& base, const StateDerivative& d, double h, SystemState& out) {
    out.rho.rho = base.rho.rho + h * d.drho;
    out.q_c = base.q_c + h * d.dq_c;
    out.p_c = base.p_c + h * d.dp_c;
    out.q_B = base.q_B + h * d.dq_B;
    out.p_B = base.p_B + h * d.dp_B;
    for (std::size_t k = 0; k < base.q_D.size(); ++k) {
        out.q_D[k] = base.q_D[k] + h * d.dq_D[k];
        out.p_D[k] = base.p_D[k] + h * d.dp_D[k];
    }
    out.t = base.t + h;
}

}  // namespace

Rk4Stepper::Rk4Stepper(const Params& p) : params_(p) {}

void Rk4Stepper::step(SystemState& s, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (stage_.q_D.size() != s.q_D.size()) {
        stage_.q_D.resize(s.q_D.size());
        stage_.p_D.resize(s.q_D.size());
    }
    stage_.omega_D = s.omega_D;

    const double t0 = s.t;
    const double half = 0.5 * dt;
    rhs_into(s, params_, t0, k1_);
    add_scaled(s, k1_, half, stage_);
    rhs_into(stage_, params_, t0 + half, k2_);
    add_scaled(s, k2_, half, stage_);
    rhs_into(stage_, params_, t0 + half, k3_);
    add_scaled(s, k3_, dt, stage_);
    rhs_into(stage_, params_, t0 + dt, k4_);

    const double w = dt / 6.0;
    s.rho.rho += w * (k1_.drho + 2.0 * k2_.drho + 2.0 * k3_.drho + k4_.drho);
    s.rho.rho = 0.5 * (s.rho.rho + s.rho.rho.adjoint()).eval();
    s.q_c += w * (k1_.dq_c + 2.0 * k2_.dq_c + 2.0 * k3_.dq_c + k4_.dq_c);
    s.p_c += w * (k1_.dp_c + 2.0 * k2_.dp_c + 2.0 * k3_.dp_c + k4_.dp_c);
    s.q_B += w * (k1_.dq_B + 2.0 * k2_.dq_B + 2.0 * k3_.dq_B + k4_.dq_B);
    s.p_B += w * (k1_.dp_B + 2.0 * k2_.dp_B + 2.0 * k3_.dp_B + k4_.dp_B);
    for (std::size_t k = 0; k < s.q_D.size(); ++k) {
        s.q_D[k] += w * (k1_.dq_D[k] + 2.0 * k2_.dq_D[k] + 2.0 * k3_.dq_D[k] + k4_.dq_D[k]);
        s.p_D[k] += w * (k1_.dp_D[k] + 2.0 * k2_.dp_D[k] + 2.0 * k3_.dp_D[k] + k4_.dp_D[k]);
    }
    s.t = t0 + dt;

    if (!s.all_finite()) {
        std::ostringstream msg;
        msg << "non-finite state after step to t = " << s.t << " a.u.";
        throw IntegrationError(msg.str(), t0);
    }
}

SystemState rk4_step(const SystemState& s, const Params& p, double dt) {
    SystemState next = s;
    Rk4Stepper stepper(p);
    stepper.step(next, dt);
    return next;
}

namespace {

void record(const SystemState& s, const Params& p, Trajectory& traj) {
    const EnergyReport e = energies(s, p);
    traj.times.push_back(s.t);
    traj.P_e.push_back(excited_population(s.rho.rho));
    traj.re_rho_eg.push_back(s.rho.coherence_eg().real());
    traj.im_rho_eg.push_back(s.rho.coherence_eg().imag());
    traj.E_e.push_back(e.E_e);
    traj.E_c.push_back(e.E_c);
    traj.E_B.push_back(e.E_B);
    traj.E_D.push_back(e.E_D);
    traj.q_c.push_back(s.q_c);
    traj.p_c.push_back(s.p_c);
    traj.q_B.push_back(s.q_B);
    traj.p_B.push_back(s.p_B);
    traj.E_total.push_back(total_energy(s, p));
}

}  // namespace

Trajectory integrate_from(SystemState s, const Params& p) {
    validate(p);
    Trajectory traj;
    traj.params = p;
    traj.dt = p.dt;
    traj.record_stride = p.record_stride;

    // step count fixed up front so that times stay on the exact grid k * dt
    const auto n_steps = static_cast<long long>(std::ceil(p.t_final / p.dt - 1e-9));
    const double t0 = s.t;
    const auto expected = static_cast<std::size_t>(n_steps / p.record_stride + 2);
    for (auto* v : {&traj.times, &traj.P_e, &traj.re_rho_eg, &traj.im_rho_eg, &traj.E_e, &traj.E_c,
                    &traj.E_B, &traj.E_D, &traj.q_c, &traj.p_c, &traj.q_B, &traj.p_B, &traj.E_total}) {
        v->reserve(expected);
    }

    record(s, p, traj);
    Rk4Stepper stepper(p);
    for (long long k = 1; k <= n_steps; ++k) {
        stepper.step(s, p.dt);
        s.t = t0 + static_cast<double>(k) * p.dt;
        if (k % p.record_stride == 0 || k == n_steps) record(s, p, traj);
    }
    return traj;
}

Trajectory integrate(const Params& p) {
    validate(p);
    return integrate_from(initial_state(p), p);
}

TerminalObservable terminal_observable_from_string(const std::string& name) {
    if (name == "E_D") return TerminalObservable::E_D;
    if (name == "E_c") return TerminalObservable::E_c;
    if (name == "E_B") return TerminalObservable::E_B;
    if (name == "E_e") return TerminalObservable::E_e;
    if (name == "P_e") return TerminalObservable::P_e;
    if (name == "E_total" || name == "energy") return TerminalObservable::TotalEnergy;
    throw std::invalid_argument("unknown observable '" + name +
                                "' (expected E_D, E_c, E_B, E_e, P_e, E_total)");
}

std::string to_string(TerminalObservable o) {
    switch (o) {
    case TerminalObservable::E_D: return "E_D";
    case TerminalObservable::E_c: return "E_c";
    case TerminalObservable::E_B: return "E_B";
    case TerminalObservable::E_e: return "E_e";
    case TerminalObservable::P_e: return "P_e";
    case TerminalObservable::TotalEnergy: return "E_total";
    }
    return "?";
}

double terminal_value(const Trajectory& traj, TerminalObservable o) {
    if (traj.size() == 0) throw std::invalid_argument("empty trajectory");
    switch (o) {
    case TerminalObservable::E_D: return traj.E_D.back();
    case TerminalObservable::E_c: return traj.E_c.back();
    case TerminalObservable::E_B: return traj.E_B.back();
    case TerminalObservable::E_e: return traj.E_e.back();
    case TerminalObservable::P_e: return traj.P_e.back();
    case TerminalObservable::TotalEnergy: return traj.E_total.back();
    }
    return 0.0;
}

ConvergenceReport convergence_check(const Params& p, TerminalObservable o) {
    Params fine = p;
    fine.dt = 0.5 * p.dt;
    fine.record_stride = 2 * p.record_stride;

    ConvergenceReport r;
    r.value_dt = terminal_value(integrate(p), o);
    r.value_dt_half = terminal_value(integrate(fine), o);
    const double scale = std::max(std::abs(r.value_dt), std::abs(r.value_dt_half));
    // below this both runs sit at the fixed point and only the absolute gap is meaningful
    constexpr double kAbsoluteFloor = 1e-10;
    if (scale < kAbsoluteFloor) {
        r.relative = false;
        r.difference = std::abs(r.value_dt - r.value_dt_half);
    } else {
        r.difference = std::abs(r.value_dt - r.value_dt_half) / scale;
    }
    return r;
}

}  // namespace casimir
