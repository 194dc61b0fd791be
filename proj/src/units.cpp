#include "casimir/units.hpp"

namespace casimir {

namespace {

enum class Dimension { Energy, Time };

Dimension dimension_of(Unit u) {
    switch (u) {
    case Unit::HartreeEnergy:
    case Unit::Wavenumber:
        return Dimension::Energy;
    case Unit::AuTime:
    case Unit::Femtosecond:
    case Unit::Picosecond:
        return Dimension::Time;
    }
    throw UnitError("unknown unit");
}

// value of one unit expressed in the atomic unit of its dimension
double to_atomic(Unit u) {
    switch (u) {
    case Unit::HartreeEnergy: return 1.0;
    case Unit::Wavenumber: return 1.0 / kWavenumberPerHartree;
    case Unit::AuTime: return 1.0;
    case Unit::Femtosecond: return 1.0 / kFemtosecondPerAuTime;
    case Unit::Picosecond: return 1e3 / kFemtosecondPerAuTime;
    }
    throw UnitError("unknown unit");
}

}  // namespace

Unit unit_from_string(const std::string& name) {
    if (name == "au" || name == "hartree" || name == "au_energy") return Unit::HartreeEnergy;
    if (name == "cm-1" || name == "cm1") return Unit::Wavenumber;
    if (name == "au_time") return Unit::AuTime;
    if (name == "fs") return Unit::Femtosecond;
    if (name == "ps") return Unit::Picosecond;
    throw UnitError("unsupported unit '" + name + "'");
}

std::string to_string(Unit u) {
    switch (u) {
    case Unit::HartreeEnergy: return "au";
    case Unit::Wavenumber: return "cm-1";
    case Unit::AuTime: return "au_time";
    case Unit::Femtosecond: return "fs";
    case Unit::Picosecond: return "ps";
    }
    return "?";
}

double convert_units(double value, Unit from, Unit to) {
    if (dimension_of(from) != dimension_of(to)) {
        throw UnitError("cannot convert " + to_string(from) + " to " + to_string(to));
    }
    if (from == to) return value;
    return value * (to_atomic(from) / to_atomic(to));
}

}  // namespace casimir
