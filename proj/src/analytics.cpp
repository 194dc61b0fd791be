#include "casimir/analytics.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "casimir/model.hpp"
#include "casimir/observables.hpp"

namespace casimir {

double ResonanceWeight::operator()(double detuning) const {
    switch (kind) {
    case Kind::Constant:
        return 1.0;
    case Kind::Indicator:
        return std::abs(detuning) <= half_width ? 1.0 : 0.0;
    case Kind::Lorentzian:
        return half_width * half_width / (detuning * detuning + half_width * half_width);
    }
    return 0.0;
}

ResonanceWeight ResonanceWeight::default_for(const Params& p) {
    ResonanceWeight w;
    w.kind = Kind::Lorentzian;
    w.half_width = 0.5 * polariton_frequencies(p).splitting;
    if (!(w.half_width > 0.0)) throw std::invalid_argument("resonance half-width must be > 0");
    return w;
}

std::string to_string(ResonanceWeight::Kind k) {
    switch (k) {
    case ResonanceWeight::Kind::Indicator: return "indicator";
    case ResonanceWeight::Kind::Lorentzian: return "lorentzian";
    case ResonanceWeight::Kind::Constant: return "constant";
    }
    return "?";
}

ResonanceWeight::Kind resonance_kind_from_string(const std::string& name) {
    if (name == "indicator") return ResonanceWeight::Kind::Indicator;
    if (name == "lorentzian") return ResonanceWeight::Kind::Lorentzian;
    if (name == "constant") return ResonanceWeight::Kind::Constant;
    throw std::invalid_argument("unknown resonance weight '" + name + "'");
}

namespace {

void check_population(double P_e) {
    if (!(P_e >= 0.0 && P_e <= 1.0)) throw std::invalid_argument("P_e must lie in [0, 1]");
}

}  // namespace

double predicted_photon_gain(const Params& p, double P_e, double re_rho_eg) {
    check_population(P_e);
    if (!(std::abs(re_rho_eg) <= 0.5)) throw std::invalid_argument("|re_rho_eg| must be ≤ 1/2");
    const double dipole_change = P_e * p.delta_d() + 2.0 * p.d_eg * re_rho_eg;
    const double amplitude = p.lambda_c * p.n_e * dipole_change;
    return 0.5 * amplitude * amplitude;
}

double predicted_photon_gain_longtime(const Params& p, double P_e) {
    check_population(P_e);
    const double amplitude = p.lambda_c * p.n_e * P_e * p.delta_d();
    return 0.5 * amplitude * amplitude;
}

VibrationalGain predicted_vibrational_gain(const Params& p, double P_e, const ResonanceWeight& w) {
    if (w.kind != ResonanceWeight::Kind::Constant && !(w.half_width > 0.0)) {
        throw std::invalid_argument("resonance half-width must be > 0");
    }
    VibrationalGain g;
    g.weight = w(p.omega_v - p.omega_c);
    g.total = 0.5 * predicted_photon_gain_longtime(p, P_e) * g.weight;
    g.per_oscillator = g.total / p.n_v;
    return g;
}

double quench_oracle(const Params& p, double P_e, double re_rho_eg) {
    SystemState before;
    before.rho.rho = ElectronicDensityMatrix::ground_state();
    before.q_c = -p.lambda_c * mean_total_dipole(before, p) / p.omega_c;

    // photon and vibrations frozen across the electronic transition
    SystemState after = before;
    after.rho.rho(kGround, kGround) = 1.0 - P_e;
    after.rho.rho(kExcited, kExcited) = P_e;
    after.rho.rho(kGround, kExcited) = re_rho_eg;
    after.rho.rho(kExcited, kGround) = re_rho_eg;

    return energies(after, p).E_c - energies(before, p).E_c;
}

PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw FitError("xs and ys differ in length");
    if (xs.size() < 3) throw FitError("power-law fit needs at least 3 points");
    const std::size_t n = xs.size();
    std::vector<double> lx(n);
    std::vector<double> ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
            throw FitError("non-positive input at index " + std::to_string(i));
        }
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    // relative to the spread of ln x one would expect from distinct points
    if (!(sxx > 1e-24 * static_cast<double>(n))) throw FitError("degenerate xs in power-law fit");

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (my + fit.exponent * (lx[i] - mx));
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

}  // namespace casimir
