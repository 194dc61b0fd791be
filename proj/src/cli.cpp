#include "casimir/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "casimir/analytics.hpp"
#include "casimir/config.hpp"
#include "casimir/dynamics.hpp"
#include "casimir/io.hpp"
#include "casimir/observables.hpp"
#include "casimir/sweep.hpp"
#include "casimir/units.hpp"

namespace casimir::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

Json params_json(const Params& p) {
    Json j;
    j["system"] = {{"n_e", p.n_e},
                   {"n_v", p.n_v},
                   {"cross_term_factor", p.cross_term_factor},
                   {"collective_term_factor", p.collective_term_factor}};
    j["electronic"] = {{"omega_e", p.omega_e}, {"d_eg", p.d_eg}, {"d_gg", p.d_gg}, {"d_ee", p.d_ee}};
    j["vibrational"] = {{"omega_v", p.omega_v}, {"d_v", p.d_v}};
    j["cavity"] = {{"omega_c", p.omega_c}, {"lambda_c", p.lambda_c}};
    j["relaxation"] = {{"gamma_e", p.gamma_e}, {"gamma_c", p.gamma_c}, {"gamma_v_total", p.gamma_v_total}};
    j["pulse"] = {{"E0", p.pulse.E0}, {"t_start", p.pulse.t_start}, {"sigma", p.pulse.sigma}};
    j["integrator"] = {{"dt", p.dt}, {"t_final", p.t_final}, {"record_stride", p.record_stride}};
    j["dark_bath"] = {{"n_dark", p.n_dark},
                      {"omega_min", p.dark_omega_min},
                      {"omega_max", p.dark_omega_max},
                      {"sampling", to_string(p.dark_sampling)},
                      {"seed", p.seed}};
    return j;
}

Json manifest_base(const std::string& command, const Params& p) {
    Json m;
    m["tool"] = "casimir";
    m["version"] = kToolVersion;
    m["command"] = command;
    m["config_hash"] = git_blob_hash(write_config(p));
    m["params"] = params_json(p);
    m["dt"] = p.dt;
    m["record_stride"] = p.record_stride;
    return m;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_json(const fs::path& path, const Json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

// Finite JSON number or null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// Maps exceptions onto exit codes and reports them.
template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kValidation;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << '\n';
        return kValidation;
    } catch (const UnitError& e) {
        err << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::invalid_argument& e) {
        err << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::ios_base::failure& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const fs::filesystem_error& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const IntegrationError& e) {
        err << "integration failed: " << e.what() << " (last valid t = " << e.last_valid_time() << " a.u.)\n";
        return kRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
}

}  // namespace

Params resolve_params(const std::optional<fs::path>& config, const std::vector<std::string>& overrides) {
    Params p = config ? parse_config(*config) : Params{};
    for (const auto& o : overrides) apply_override(p, o);
    validate(p);
    return p;
}

int cmd_run(const RunOptions& o, std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        const Params p = resolve_params(o.config, o.overrides);
        const auto start = std::chrono::steady_clock::now();
        Json manifest = manifest_base("run", p);
        try {
            const Trajectory traj = integrate(p);
            write_file_atomic(o.out_dir / "trajectory.csv", trajectory_csv(traj));
            manifest["status"] = "ok";
            manifest["n_frames"] = traj.size();
            manifest["final"] = {{"t_au", traj.times.back()},
                                 {"P_e", traj.P_e.back()},
                                 {"E_D_cm1", au_to_cm1(traj.E_D.back())}};
            manifest["wall_clock_seconds"] = seconds_since(start);
            write_json(o.out_dir / "manifest.json", manifest);
            log << "wrote " << traj.size() << " frames to " << (o.out_dir / "trajectory.csv").string()
                << "; E_D(final) = " << au_to_cm1(traj.E_D.back()) << " cm-1\n";
            return static_cast<int>(kOk);
        } catch (const IntegrationError& e) {
            manifest["status"] = std::string("failed:") + e.what();
            manifest["last_valid_time_au"] = e.last_valid_time();
            manifest["wall_clock_seconds"] = seconds_since(start);
            write_json(o.out_dir / "manifest.json", manifest);
            throw;
        }
    });
}

namespace {

std::optional<IndexRange> parse_window(const std::optional<std::string>& text, std::size_t n_rows) {
    if (!text) return std::nullopt;
    const auto colon = text->find(':');
    if (colon == std::string::npos) throw ValidationError("fit window must be 'first:last'");
    try {
        IndexRange r;
        const std::string a = text->substr(0, colon);
        const std::string b = text->substr(colon + 1);
        r.first = a.empty() ? 0 : std::stoul(a);
        r.last = b.empty() ? n_rows : std::stoul(b);
        if (r.first >= r.last || r.last > n_rows) throw ValidationError("fit window out of range");
        return r;
    } catch (const std::logic_error&) {
        throw ValidationError("fit window must be 'first:last' with integer indices");
    }
}

}  // namespace

int cmd_sweep(const SweepOptions& o, std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        SweepSpec spec;
        spec.base = resolve_params(o.config, o.overrides);
        spec.param = sweep_param_from_string(o.param);
        if (o.log_range && !o.values.empty()) throw ValidationError("give either --values or --log-range, not both");
        if (o.log_range) {
            const auto& lr = *o.log_range;
            if (lr.size() != 3 || lr[2] < 1 || std::floor(lr[2]) != lr[2]) {
                throw ValidationError("--log-range expects lo hi n");
            }
            spec.values = log_range(lr[0], lr[1], static_cast<int>(lr[2]));
        } else {
            spec.values = o.values;
        }
        if (spec.values.empty()) throw ValidationError("sweep needs --values or --log-range");
        if (!(o.observable_time_ps > 0.0)) throw ValidationError("observable time must be > 0");
        spec.observable_time = ps_to_au(o.observable_time_ps);
        spec.fit_window = parse_window(o.fit_window, spec.values.size());
        spec.workers = o.workers > 0 ? o.workers : default_worker_count();

        const auto start = std::chrono::steady_clock::now();
        const SweepTable table = run_sweep(spec);
        write_file_atomic(o.out_dir / "sweep.csv", sweep_csv(table));

        Json m = manifest_base("sweep", spec.base);
        m["param"] = to_string(spec.param);
        m["values"] = spec.values;
        m["observable_time_au"] = spec.observable_time;
        m["workers"] = spec.workers;
        const auto failed = std::count_if(table.rows.begin(), table.rows.end(), [](const SweepRow& r) { return !r.ok; });
        m["rows_failed"] = failed;
        if (spec.fit_window) {
            Json fit;
            fit["window"] = {spec.fit_window->first, spec.fit_window->last};
            if (table.fit) {
                fit["exponent"] = table.fit->exponent;
                fit["prefactor"] = table.fit->prefactor;
                fit["r_squared"] = table.fit->r_squared;
            } else {
                fit["skipped"] = table.fit_note;
            }
            m["fit"] = fit;
        }
        if (spec.param == SweepParam::OmegaC) {
            const ResonanceSummary s = summarize_resonance(table);
            m["resonance"] = {{"defined", s.defined},
                              {"peak_detuning_au", s.peak_detuning},
                              {"peak_edge_contrast", s.contrast}};
        }
        m["wall_clock_seconds"] = seconds_since(start);
        write_json(o.out_dir / "manifest.json", m);
        log << "swept " << to_string(spec.param) << " over " << spec.values.size() << " values (" << failed
            << " failed)\n";
        return static_cast<int>(failed == static_cast<long>(table.rows.size()) ? kRuntime : kOk);
    });
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        if (!o.fit_lifetime && !o.spectrum && !o.rabi) {
            throw ValidationError("choose at least one of --fit-lifetime, --spectrum, --rabi");
        }
        const Trajectory traj = parse_trajectory_csv(read_file(o.trajectory));

        double window_start = Params{}.pulse.t_start + 5.0 * Params{}.pulse.sigma;
        const fs::path sibling = o.trajectory.parent_path() / "manifest.json";
        if (o.window_start_au) {
            window_start = *o.window_start_au;
        } else if (fs::exists(sibling)) {
            const Json m = Json::parse(read_file(sibling), nullptr, false);
            if (!m.is_discarded() && m.contains("params") && m["params"].contains("pulse")) {
                const auto& pulse = m["params"]["pulse"];
                window_start = pulse.value("t_start", 500.0) + 5.0 * pulse.value("sigma", 100.0);
            }
        }

        Json out;
        out["input"] = o.trajectory.string();
        out["window_start_au"] = window_start;
        const auto first = static_cast<std::size_t>(
            std::lower_bound(traj.times.begin(), traj.times.end(), window_start) - traj.times.begin());
        const std::span<const double> times = std::span(traj.times).subspan(std::min(first, traj.size()));

        if (o.fit_lifetime) {
            const std::vector<double>* column = nullptr;
            if (o.lifetime_column == "P_e") column = &traj.P_e;
            else if (o.lifetime_column == "E_e") column = &traj.E_e;
            else if (o.lifetime_column == "E_c") column = &traj.E_c;
            else if (o.lifetime_column == "E_B") column = &traj.E_B;
            else throw ValidationError("lifetime column must be P_e, E_e, E_c or E_B");
            const LifetimeFit fit =
                fit_exponential_lifetime(times, std::span(*column).subspan(std::min(first, traj.size())));
            out["lifetime"] = {{"column", o.lifetime_column},
                               {"tau_au", number(fit.tau)},
                               {"tau_ps", number(au_to_ps(fit.tau))},
                               {"r_squared", fit.r_squared},
                               {"low_confidence", fit.low_confidence}};
        }
        if (o.spectrum) {
            const Spectrum spec = dft_power(times, std::span(traj.q_B).subspan(std::min(first, traj.size())), 0.05);
            Json peaks = Json::array();
            for (const auto& pk : spectral_peaks(spec, 3, 0.01)) {
                if (peaks.size() == 8) break;
                peaks.push_back({{"omega_au", pk.omega}, {"omega_cm1", au_to_cm1(pk.omega)}, {"power", pk.power}});
            }
            out["spectrum"] = {{"signal", "q_B"}, {"bin_au", spec.bin}, {"bin_cm1", au_to_cm1(spec.bin)}, {"peaks", peaks}};
        }
        if (o.rabi) {
            const RabiEstimate r = rabi_splitting(traj.times, traj.q_B, traj.E_B, window_start);
            out["rabi"] = {{"period_fs", r.period_fs},
                           {"splitting_cm1", r.splitting_cm1},
                           {"splitting_au", r.splitting_au},
                           {"lower_au", r.lower_au},
                           {"upper_au", r.upper_au},
                           {"bin_au", r.bin_au},
                           {"method", r.from_spectrum ? "spectrum" : "energy-beating"}};
        }
        const fs::path target = o.out ? *o.out : o.trajectory.parent_path() / "analysis.json";
        write_json(target, out);
        log << out.dump(2) << '\n';
        return static_cast<int>(kOk);
    });
}

int cmd_predict(const PredictOptions& o, std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        const Params p = resolve_params(o.config, o.overrides);
        ResonanceWeight w;
        w.kind = resonance_kind_from_string(o.weight);
        if (o.half_width) {
            w.half_width = *o.half_width;
        } else if (w.kind != ResonanceWeight::Kind::Constant) {
            w.half_width = ResonanceWeight::default_for(p).half_width;
        }
        const double photon = predicted_photon_gain(p, o.pe, o.coherence);
        const double longtime = predicted_photon_gain_longtime(p, o.pe);
        const VibrationalGain vib = predicted_vibrational_gain(p, o.pe, w);

        Json out;
        out["P_e"] = o.pe;
        out["re_rho_eg"] = o.coherence;
        out["photon_gain"] = {{"au", photon}, {"cm1", au_to_cm1(photon)}};
        out["photon_gain_longtime"] = {{"au", longtime}, {"cm1", au_to_cm1(longtime)}};
        out["vibrational_gain_total"] = {{"au", vib.total}, {"cm1", au_to_cm1(vib.total)}};
        out["vibrational_gain_per_oscillator"] = {{"au", vib.per_oscillator}, {"cm1", au_to_cm1(vib.per_oscillator)}};
        out["resonance_weight"] = {{"kind", to_string(w.kind)},
                                   {"half_width_au", w.half_width},
                                   {"detuning_au", p.omega_v - p.omega_c},
                                   {"value", vib.weight}};
        if (o.out) write_json(*o.out, out);
        log << out.dump(2) << '\n';
        return static_cast<int>(kOk);
    });
}

int cmd_convergence(const ConvergenceOptions& o, std::ostream& log, std::ostream& err) {
    return guarded(err, [&] {
        const Params p = resolve_params(o.config, o.overrides);
        const TerminalObservable obs = terminal_observable_from_string(o.observable);
        const ConvergenceReport r = convergence_check(p, obs);

        Json out;
        out["observable"] = to_string(obs);
        out["dt"] = p.dt;
        out["value_dt"] = r.value_dt;
        out["value_dt_half"] = r.value_dt_half;
        out[r.relative ? "relative_difference" : "absolute_difference"] = r.difference;
        if (o.order) {
            Params half = p;
            half.dt = 0.5 * p.dt;
            half.record_stride = 2 * p.record_stride;
            const ConvergenceReport finer = convergence_check(half, obs);
            const double coarse_gap = std::abs(r.value_dt - r.value_dt_half);
            const double fine_gap = std::abs(finer.value_dt - finer.value_dt_half);
            out["value_dt_quarter"] = finer.value_dt_half;
            out["order"] = fine_gap > 0.0 && coarse_gap > 0.0 ? Json(std::log2(coarse_gap / fine_gap)) : Json(nullptr);
        }
        if (o.out) write_json(*o.out, out);
        log << out.dump(2) << '\n';
        return static_cast<int>(kOk);
    });
}

int main(int argc, char** argv, std::ostream& log, std::ostream& err) {
    CLI::App app{"Semiclassical electron/vibration/cavity dynamics under vibrational strong coupling"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    RunOptions run;
    SweepOptions sweep;
    AnalyzeOptions analyze;
    PredictOptions predict;
    ConvergenceOptions conv;
    std::string run_config, sweep_config, predict_config, conv_config, analyze_out, predict_out, conv_out;
    std::string fit_window;
    std::vector<double> log_range_args;
    double window_start = 0.0;
    double half_width = 0.0;

    auto* c_run = app.add_subcommand("run", "integrate one trajectory");
    c_run->add_option("config", run_config, "configuration file (defaults if omitted)");
    c_run->add_option("--out-dir,-o", run.out_dir, "output directory");
    c_run->add_option("--override", run.overrides, "key=value parameter override")->take_all();

    auto* c_sweep = app.add_subcommand("sweep", "scan one parameter");
    c_sweep->add_option("config", sweep_config, "configuration file (defaults if omitted)");
    c_sweep->add_option("--param", sweep.param, "parameter to sweep")->required();
    auto* values_opt = c_sweep->add_option("--values", sweep.values, "explicit values")->delimiter(',');
    auto* range_opt = c_sweep->add_option("--log-range", log_range_args, "lo hi n")->expected(3);
    values_opt->excludes(range_opt);
    c_sweep->add_option("--fit-window", fit_window, "rows first:last (half-open) for the power-law fit");
    c_sweep->add_option("--observable-time-ps", sweep.observable_time_ps, "time at which E_D is read");
    c_sweep->add_option("--workers,-j", sweep.workers, "worker threads (default: CASIMIR_WORKERS or cores)");
    c_sweep->add_option("--out-dir,-o", sweep.out_dir, "output directory");
    c_sweep->add_option("--override", sweep.overrides, "key=value parameter override")->take_all();

    auto* c_analyze = app.add_subcommand("analyze", "post-process a trajectory.csv");
    c_analyze->add_option("trajectory", analyze.trajectory, "trajectory.csv")->required();
    c_analyze->add_flag("--fit-lifetime", analyze.fit_lifetime, "exponential fit of the post-pulse tail");
    c_analyze->add_flag("--spectrum", analyze.spectrum, "bright-mode spectrum peaks");
    c_analyze->add_flag("--rabi", analyze.rabi, "polariton beating period and splitting");
    c_analyze->add_option("--column", analyze.lifetime_column, "column for --fit-lifetime");
    auto* ws_opt = c_analyze->add_option("--window-start-au", window_start, "start of the analysis window");
    c_analyze->add_option("--out", analyze_out, "output JSON path");

    auto* c_predict = app.add_subcommand("predict", "closed-form photon and vibrational gains");
    c_predict->add_option("config", predict_config, "configuration file (defaults if omitted)");
    c_predict->add_option("--pe", predict.pe, "excited population after the pulse")->required();
    c_predict->add_option("--coherence", predict.coherence, "real part of rho_eg");
    c_predict->add_option("--weight", predict.weight, "resonance weight: lorentzian, indicator, constant");
    auto* hw_opt = c_predict->add_option("--half-width", half_width, "resonance half-width in a.u.");
    c_predict->add_option("--out", predict_out, "also write the JSON here");
    c_predict->add_option("--override", predict.overrides, "key=value parameter override")->take_all();

    auto* c_conv = app.add_subcommand("convergence", "compare a terminal observable at dt and dt/2");
    c_conv->add_option("config", conv_config, "configuration file (defaults if omitted)");
    c_conv->add_option("--observable", conv.observable, "E_D, E_c, E_B, E_e, P_e or E_total");
    c_conv->add_flag("--order", conv.order, "also run dt/4 and estimate the convergence order");
    c_conv->add_option("--out", conv_out, "also write the JSON here");
    c_conv->add_option("--override", conv.overrides, "key=value parameter override")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        log << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        log << kToolVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kValidation;
    }

    auto opt_path = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<fs::path>(s); };
    if (c_run->parsed()) {
        run.config = opt_path(run_config);
        return cmd_run(run, log, err);
    }
    if (c_sweep->parsed()) {
        sweep.config = opt_path(sweep_config);
        if (range_opt->count() > 0) sweep.log_range = log_range_args;
        if (!fit_window.empty()) sweep.fit_window = fit_window;
        return cmd_sweep(sweep, log, err);
    }
    if (c_analyze->parsed()) {
        analyze.out = opt_path(analyze_out);
        if (ws_opt->count() > 0) analyze.window_start_au = window_start;
        return cmd_analyze(analyze, log, err);
    }
    if (c_predict->parsed()) {
        predict.config = opt_path(predict_config);
        predict.out = opt_path(predict_out);
        if (hw_opt->count() > 0) predict.half_width = half_width;
        return cmd_predict(predict, log, err);
    }
    conv.config = opt_path(conv_config);
    conv.out = opt_path(conv_out);
    return cmd_convergence(conv, log, err);
}

}  // namespace casimir::cli
