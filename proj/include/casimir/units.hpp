#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Hartree energy in wavenumbers and atomic time unit in femtoseconds.
inline constexpr double kWavenumberPerHartree = 219474.63;
inline constexpr double kFemtosecondPerAuTime = 0.02418884;

enum class Unit { HartreeEnergy, Wavenumber, AuTime, Femtosecond, Picosecond };

class UnitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Unit unit_from_string(const std::string& name);
std::string to_string(Unit u);

// Linear conversion between compatible units. Energy/frequency units and time
// units do not mix; an incompatible pair throws UnitError.
double convert_units(double value, Unit from, Unit to);

inline double au_to_cm1(double e) { return e * kWavenumberPerHartree; }
inline double cm1_to_au(double e) { return e / kWavenumberPerHartree; }
inline double au_to_fs(double t) { return t * kFemtosecondPerAuTime; }
inline double fs_to_au(double t) { return t / kFemtosecondPerAuTime; }
inline double au_to_ps(double t) { return t * kFemtosecondPerAuTime * 1e-3; }
inline double ps_to_au(double t) { return t * 1e3 / kFemtosecondPerAuTime; }

}  // namespace casimir
