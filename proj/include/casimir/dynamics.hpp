#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/model.hpp"

namespace casimir {

// Raised when the state or its derivative stops being finite. Carries the
// last time at which the state was still valid.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double last_valid_time)
        : std::runtime_error(what), last_valid_time_(last_valid_time) {}
    double last_valid_time() const { return last_valid_time_; }

private:
    double last_valid_time_;
};

struct StateDerivative {
    Matrix2c drho = Matrix2c::Zero();
    double dq_c = 0.0;
    double dp_c = 0.0;
    double dq_B = 0.0;
    double dp_B = 0.0;
    std::vector<double> dq_D;
    std::vector<double> dp_D;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> P_e;
    std::vector<double> re_rho_eg;
    std::vector<double> im_rho_eg;
    std::vector<double> E_e;
    std::vector<double> E_c;
    std::vector<double> E_B;
    std::vector<double> E_D;
    std::vector<double> q_c;
    std::vector<double> p_c;
    std::vector<double> q_B;
    std::vector<double> p_B;
    // total mean-field energy including the bright/dark coupling term
    std::vector<double> E_total;

    Params params;
    double dt = 0.0;
    int record_stride = 1;

    std::size_t size() const { return times.size(); }
};

// Amplitude damping with jump operator sigma_- = |g><e|.
Matrix2c lindblad_dissipator(const Matrix2c& rho, double gamma_e);

// Full right-hand side of the coupled Lindblad / Newton equations.
StateDerivative rhs(const SystemState& s, const Params& p, double t);

// Allocation-free variant used by the integrator. `out` is resized as needed.
void rhs_into(const SystemState& s, const Params& p, double t, StateDerivative& out);

// Fixed-step classical RK4 with re-hermitization of rho after the update.
class Rk4Stepper {
public:
    explicit Rk4Stepper(const Params& p);

    // Advances `s` in place by dt. Throws IntegrationError on a non-finite state.
    void step(SystemState& s, double dt);

private:
    const Params& params_;
    StateDerivative k1_, k2_, k3_, k4_;
    SystemState stage_;
};

SystemState rk4_step(const SystemState& s, const Params& p, double dt);

// Integrates from initial_state(p) until t >= t_final, recording every
// record_stride steps including the first and the last step.
Trajectory integrate(const Params& p);

// Same as integrate, starting from a caller-provided state.
Trajectory integrate_from(SystemState s, const Params& p);

enum class TerminalObservable { E_D, E_c, E_B, E_e, P_e, TotalEnergy };

TerminalObservable terminal_observable_from_string(const std::string& name);
std::string to_string(TerminalObservable o);

double terminal_value(const Trajectory& traj, TerminalObservable o);

struct ConvergenceReport {
    double value_dt = 0.0;
    double value_dt_half = 0.0;
    double difference = 0.0;
    // false when both values are ~0 and `difference` is absolute
    bool relative = true;
};

ConvergenceReport convergence_check(const Params& p, TerminalObservable o);

}  // namespace casimir
