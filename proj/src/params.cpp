#include "casimir/params.hpp"

#include <cmath>

namespace casimir {

std::string to_string(DarkSampling s) {
    return s == DarkSampling::MidpointGrid ? "midpoint-grid" : "seeded-uniform";
}

DarkSampling dark_sampling_from_string(const std::string& name) {
    if (name == "midpoint-grid") return DarkSampling::MidpointGrid;
    if (name == "seeded-uniform") return DarkSampling::SeededUniform;
    throw ValidationError("sampling must be one of midpoint-grid, seeded-uniform (got '" + name + "')");
}

double Params::gamma_v() const {
    if (n_dark <= 0) return 0.0;
    return gamma_v_total / std::sqrt(static_cast<double>(n_dark));
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

void finite(double v, const char* key) {
    require(std::isfinite(v), std::string(key) + " must be finite");
}

void positive(double v, const char* key) {
    finite(v, key);
    require(v > 0.0, std::string(key) + " must be > 0");
}

void non_negative(double v, const char* key) {
    finite(v, key);
    require(v >= 0.0, std::string(key) + " must be ≥ 0");
}

}  // namespace

void validate(const Params& p) {
    positive(p.omega_e, "omega_e");
    positive(p.omega_v, "omega_v");
    positive(p.omega_c, "omega_c");
    non_negative(p.lambda_c, "lambda_c");
    finite(p.d_eg, "d_eg");
    finite(p.d_gg, "d_gg");
    finite(p.d_ee, "d_ee");
    finite(p.d_v, "d_v");
    finite(p.n_e, "n_e");
    require(p.n_e >= 1.0, "n_e must be ≥ 1");
    finite(p.n_v, "n_v");
    require(p.n_v >= 1.0, "n_v must be ≥ 1");
    non_negative(p.gamma_e, "gamma_e");
    non_negative(p.gamma_c, "gamma_c");
    non_negative(p.gamma_v_total, "gamma_v_total");
    require(p.n_dark >= 0, "n_dark must be ≥ 0");
    finite(p.dark_omega_min, "omega_min");
    finite(p.dark_omega_max, "omega_max");
    if (p.n_dark > 0) {
        positive(p.dark_omega_min, "omega_min");
        require(p.dark_omega_min < p.dark_omega_max, "omega_min must be < omega_max");
    }
    non_negative(p.pulse.E0, "E0");
    finite(p.pulse.t_start, "t_start");
    positive(p.pulse.sigma, "sigma");
    require(p.cross_term_factor == 1 || p.cross_term_factor == 2, "cross_term_factor must be 1 or 2");
    require(p.collective_term_factor == 1 || p.collective_term_factor == 2,
            "collective_term_factor must be 1 or 2");
    positive(p.dt, "dt");
    positive(p.t_final, "t_final");
    require(p.record_stride >= 1, "record_stride must be ≥ 1");
}

}  // namespace casimir
