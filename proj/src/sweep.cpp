#include "casimir/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "casimir/dynamics.hpp"
#include "casimir/units.hpp"

namespace casimir {

std::string to_string(SweepParam p) {
    switch (p) {
    case SweepParam::LambdaC: return "lambda_c";
    case SweepParam::NE: return "n_e";
    case SweepParam::E0: return "E0";
    case SweepParam::DeltaD: return "delta_d";
    case SweepParam::OmegaC: return "omega_c";
    case SweepParam::NV: return "n_v";
    case SweepParam::GammaE: return "gamma_e";
    case SweepParam::GammaC: return "gamma_c";
    case SweepParam::GammaVTotal: return "gamma_v_total";
    }
    return "?";
}

SweepParam sweep_param_from_string(const std::string& name) {
    for (auto p : {SweepParam::LambdaC, SweepParam::NE, SweepParam::E0, SweepParam::DeltaD, SweepParam::OmegaC,
                   SweepParam::NV, SweepParam::GammaE, SweepParam::GammaC, SweepParam::GammaVTotal}) {
        if (to_string(p) == name) return p;
    }
    throw ValidationError("unknown sweep parameter '" + name +
                          "' (expected lambda_c, n_e, E0, delta_d, omega_c, n_v, gamma_e, gamma_c, gamma_v_total)");
}

Params with_override(const Params& base, SweepParam param, double value) {
    Params p = base;
    switch (param) {
    case SweepParam::LambdaC: p.lambda_c = value; break;
    case SweepParam::NE: p.n_e = value; break;
    case SweepParam::E0: p.pulse.E0 = value; break;
    case SweepParam::DeltaD: p.d_ee = p.d_gg + value; break;
    case SweepParam::OmegaC: p.omega_c = value; break;
    case SweepParam::NV: p.n_v = value; break;
    case SweepParam::GammaE: p.gamma_e = value; break;
    case SweepParam::GammaC: p.gamma_c = value; break;
    case SweepParam::GammaVTotal: p.gamma_v_total = value; break;
    }
    return p;
}

std::vector<double> log_range(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > 0.0)) throw ValidationError("log range bounds must be > 0");
    if (n < 1) throw ValidationError("log range needs at least one point");
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

int default_worker_count() {
    if (const char* env = std::getenv("CASIMIR_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

SweepRow run_row(const Params& base, SweepParam param, double value, double observable_time) {
    SweepRow row;
    row.value = value;
    try {
        if (!std::isfinite(value)) throw ValidationError("sweep value must be finite");
        Params p = with_override(base, param, value);
        p.t_final = observable_time;
        const Trajectory traj = integrate(p);
        row.E_D_cm1 = au_to_cm1(traj.E_D.back());
        row.E_c_peak_cm1 = au_to_cm1(*std::max_element(traj.E_c.begin(), traj.E_c.end()));
        row.P_e_max = *std::max_element(traj.P_e.begin(), traj.P_e.end());
        row.P_e_final = traj.P_e.back();
        row.ok = true;
        row.status = "ok";
    } catch (const std::exception& e) {
        row.ok = false;
        row.status = std::string("failed:") + e.what();
    }
    return row;
}

namespace {

void fit_rows(const SweepSpec& spec, SweepTable& table) {
    if (!spec.fit_window) return;
    const IndexRange w = *spec.fit_window;
    if (w.first >= w.last || w.last > table.rows.size()) {
        table.fit_note = "fit window out of range";
        return;
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = w.first; i < w.last; ++i) {
        const SweepRow& r = table.rows[i];
        if (!r.ok) {
            table.fit_note = "fit skipped: row " + std::to_string(i) + " failed";
            return;
        }
        xs.push_back(r.value);
        ys.push_back(r.E_D_cm1);
    }
    try {
        table.fit = fit_power_law(xs, ys);
    } catch (const FitError& e) {
        table.fit_note = std::string("fit skipped: ") + e.what();
    }
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec) {
    if (spec.values.empty()) throw ValidationError("sweep needs at least one value");
    for (double v : spec.values) {
        if (!std::isfinite(v)) throw ValidationError("sweep values must be finite");
    }
    if (!(spec.observable_time > 0.0)) throw ValidationError("observable_time must be > 0");

    SweepTable table;
    table.param = spec.param;
    table.base = spec.base;
    table.observable_time = spec.observable_time;
    table.rows.resize(spec.values.size());

    const std::size_t n_workers =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(spec.workers, 1)), 1, spec.values.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < spec.values.size(); i = next++) {
            table.rows[i] = run_row(spec.base, spec.param, spec.values[i], spec.observable_time);
        }
    };
    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(work);
    }

    fit_rows(spec, table);
    return table;
}

ResonanceSummary summarize_resonance(const SweepTable& table) {
    ResonanceSummary s;
    if (table.param != SweepParam::OmegaC || table.rows.empty()) return s;
    const double omega_v = table.base.omega_v;
    std::size_t peak = 0;
    std::size_t edge = 0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const SweepRow& r = table.rows[i];
        if (!r.ok) return s;
        if (r.E_D_cm1 > table.rows[peak].E_D_cm1) peak = i;
        const double d = std::abs(r.value - omega_v);
        const double d_edge = std::abs(table.rows[edge].value - omega_v);
        // ties between equally detuned rows resolve to the larger E_D
        if (d > d_edge * (1.0 + 1e-12) ||
            (std::abs(d - d_edge) <= 1e-12 * d_edge && r.E_D_cm1 > table.rows[edge].E_D_cm1)) {
            edge = i;
        }
    }
    const double peak_value = table.rows[peak].E_D_cm1;
    const double edge_value = table.rows[edge].E_D_cm1;
    if (!(peak_value > 0.0) || !(edge_value > 0.0)) return s;
    s.defined = true;
    s.peak_detuning = table.rows[peak].value - omega_v;
    s.contrast = peak_value / edge_value;
    return s;
}

DetuningScan detuning_scan(SweepSpec spec) {
    if (spec.param != SweepParam::OmegaC) throw ValidationError("detuning scan sweeps omega_c");
    if (spec.values.empty()) throw ValidationError("sweep needs at least one value");
    const auto [lo, hi] = std::minmax_element(spec.values.begin(), spec.values.end());
    if (!(*lo <= spec.base.omega_v && *hi >= spec.base.omega_v)) {
        throw ValidationError("detuning scan values must bracket omega_v");
    }
    spec.fit_window.reset();
    DetuningScan scan;
    scan.table = run_sweep(spec);
    scan.summary = summarize_resonance(scan.table);
    return scan;
}

}  // namespace casimir
