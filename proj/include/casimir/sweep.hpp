#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "casimir/analytics.hpp"
#include "casimir/params.hpp"

namespace casimir {

enum class SweepParam { LambdaC, NE, E0, DeltaD, OmegaC, NV, GammaE, GammaC, GammaVTotal };

std::string to_string(SweepParam p);
SweepParam sweep_param_from_string(const std::string& name);

// Returns a copy of `base` with the swept parameter set to `value`. DeltaD
// moves d_ee with d_gg held fixed; OmegaC moves the cavity with omega_v fixed.
Params with_override(const Params& base, SweepParam param, double value);

// Half-open row range [first, last) used for the power-law fit.
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;
};

struct SweepSpec {
    Params base;
    SweepParam param = SweepParam::LambdaC;
    std::vector<double> values;
    double observable_time = 5000.0 / 0.02418884;  // 5 ps
    std::optional<IndexRange> fit_window;
    int workers = 1;
};

struct SweepRow {
    double value = 0.0;
    double E_D_cm1 = 0.0;
    double E_c_peak_cm1 = 0.0;
    double P_e_max = 0.0;
    double P_e_final = 0.0;
    bool ok = false;
    std::string status;  // "ok" or "failed:<reason>"
};

struct SweepTable {
    SweepParam param = SweepParam::LambdaC;
    std::vector<SweepRow> rows;
    std::optional<PowerLawFit> fit;
    std::string fit_note;  // why the fit was skipped, if it was
    Params base;
    double observable_time = 0.0;
};

// n log-spaced values from lo to hi inclusive.
std::vector<double> log_range(double lo, double hi, int n);

// Number of workers from the CASIMIR_WORKERS environment variable, falling
// back to the hardware concurrency.
int default_worker_count();

SweepRow run_row(const Params& base, SweepParam param, double value, double observable_time);

SweepTable run_sweep(const SweepSpec& spec);

struct ResonanceSummary {
    bool defined = false;
    double peak_detuning = 0.0;  // omega_c - omega_v at the E_D maximum
    double contrast = 0.0;       // E_D(peak) / E_D(most detuned row)
};

struct DetuningScan {
    SweepTable table;
    ResonanceSummary summary;
};

// Runs an omega_c sweep and locates the resonance.
DetuningScan detuning_scan(SweepSpec spec);

ResonanceSummary summarize_resonance(const SweepTable& table);

}  // namespace casimir
