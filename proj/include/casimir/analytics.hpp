#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "casimir/params.hpp"

namespace casimir {

// Weight of the vibrational share of the photon gain as a function of the
// vibration/cavity detuning. weight(0) = 1 for the indicator and Lorentzian kinds.
struct ResonanceWeight {
    enum class Kind { Indicator, Lorentzian, Constant };

    Kind kind = Kind::Lorentzian;
    double half_width = 0.0;

    double operator()(double detuning) const;

    // Lorentzian with half-width equal to half the cavity/bright-mode splitting.
    static ResonanceWeight default_for(const Params& p);
};

std::string to_string(ResonanceWeight::Kind k);
ResonanceWeight::Kind resonance_kind_from_string(const std::string& name);

// Photon energy released by a sudden change of the electronic state from the
// ground state to populations (1 - P_e, P_e) and real coherence re_rho_eg.
double predicted_photon_gain(const Params& p, double P_e, double re_rho_eg);

// Long-time limit of predicted_photon_gain with the coherence dephased.
double predicted_photon_gain_longtime(const Params& p, double P_e);

struct VibrationalGain {
    double total = 0.0;
    double per_oscillator = 0.0;
    double weight = 0.0;
};

VibrationalGain predicted_vibrational_gain(const Params& p, double P_e, const ResonanceWeight& w);

// Independent route to predicted_photon_gain: builds the frozen-photon state
// before and after the electronic quench and differences the photonic energy
// through observables::energies.
double quench_oracle(const Params& p, double P_e, double re_rho_eg);

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
};

// Least squares of ln y against ln x.
PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys);

}  // namespace casimir
