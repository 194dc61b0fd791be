#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casimir/params.hpp"

namespace casimir::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kRuntime = 2, kIo = 3 };

inline constexpr const char* kToolVersion = "1.0.0";

struct RunOptions {
    std::optional<std::filesystem::path> config;
    std::vector<std::string> overrides;
    std::filesystem::path out_dir = ".";
};

struct SweepOptions {
    std::optional<std::filesystem::path> config;
    std::vector<std::string> overrides;
    std::filesystem::path out_dir = ".";
    std::string param;
    std::vector<double> values;
    std::optional<std::vector<double>> log_range;  // {lo, hi, n}
    std::optional<std::string> fit_window;         // "first:last", half-open row indices
    double observable_time_ps = 5.0;
    int workers = 0;  // 0: CASIMIR_WORKERS or hardware concurrency
};

struct AnalyzeOptions {
    std::filesystem::path trajectory;
    std::optional<std::filesystem::path> out;  // default: analysis.json next to the input
    bool fit_lifetime = false;
    bool spectrum = false;
    bool rabi = false;
    std::string lifetime_column = "P_e";
    std::optional<double> window_start_au;  // default: t_start + 5 sigma from a sibling manifest.json
};

struct PredictOptions {
    std::optional<std::filesystem::path> config;
    std::vector<std::string> overrides;
    double pe = 0.0;
    double coherence = 0.0;
    std::string weight = "lorentzian";
    std::optional<double> half_width;
    std::optional<std::filesystem::path> out;
};

struct ConvergenceOptions {
    std::optional<std::filesystem::path> config;
    std::vector<std::string> overrides;
    std::string observable = "E_D";
    bool order = false;  // also run dt/4 and estimate the convergence order
    std::optional<std::filesystem::path> out;
};

// Each command writes its results, prints a short summary to `log`, and
// returns an ExitCode. Errors are reported on `err`.
int cmd_run(const RunOptions& o, std::ostream& log, std::ostream& err);
int cmd_sweep(const SweepOptions& o, std::ostream& log, std::ostream& err);
int cmd_analyze(const AnalyzeOptions& o, std::ostream& log, std::ostream& err);
int cmd_predict(const PredictOptions& o, std::ostream& log, std::ostream& err);
int cmd_convergence(const ConvergenceOptions& o, std::ostream& log, std::ostream& err);

// Config file (or defaults) with overrides applied, validated.
Params resolve_params(const std::optional<std::filesystem::path>& config, const std::vector<std::string>& overrides);

// Entry point shared by the executable and the tests.
int main(int argc, char** argv, std::ostream& log, std::ostream& err);

}  // namespace casimir::cli
