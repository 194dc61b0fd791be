#include "casimir/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "casimir/units.hpp"

namespace casimir {

EnergyReport energies(const SystemState& s, const Params& p) {
    EnergyReport e;
    e.E_e = p.n_e * p.omega_e * excited_population(s.rho.rho);
    const double displaced = s.q_c + p.lambda_c * mean_total_dipole(s, p) / p.omega_c;
    e.E_c = 0.5 * s.p_c * s.p_c + 0.5 * p.omega_c * p.omega_c * displaced * displaced;
    e.E_B = 0.5 * s.p_B * s.p_B + 0.5 * p.omega_v * p.omega_v * s.q_B * s.q_B;
    for (std::size_t k = 0; k < s.q_D.size(); ++k) {
        const double w = s.omega_D[k];
        e.E_D += 0.5 * s.p_D[k] * s.p_D[k] + 0.5 * w * w * s.q_D[k] * s.q_D[k];
    }
    return e;
}

double total_energy(const SystemState& s, const Params& p) {
    const EnergyReport e = energies(s, p);
    const double sum_q_dark = std::accumulate(s.q_D.begin(), s.q_D.end(), 0.0);
    return e.E_e + e.E_c + e.E_B + e.E_D + p.gamma_v() * s.q_B * sum_q_dark;
}

double excited_population(const Matrix2c& rho) { return rho(kExcited, kExcited).real(); }

PolaritonPair polariton_frequencies(const Params& p) {
    if (p.lambda_c < 0.0) throw ObservableError("lambda_c must be ≥ 0");
    const double slope = std::sqrt(p.n_v) * p.d_v;
    PolaritonPair out;
    out.k_cc = p.omega_c * p.omega_c;
    out.k_cb = p.omega_c * p.lambda_c * slope;
    out.k_bb = p.omega_v * p.omega_v + p.lambda_c * p.lambda_c * slope * slope;

    const double mean = 0.5 * (out.k_cc + out.k_bb);
    const double radius = std::hypot(0.5 * (out.k_cc - out.k_bb), out.k_cb);
    const double upper = mean + radius;
    const double det = out.k_cc * out.k_bb - out.k_cb * out.k_cb;
    if (!(upper > 0.0) || !(det > 0.0)) {
        throw ObservableError("non-positive normal-mode eigenvalue: unphysical coupling");
    }
    // det / upper avoids cancellation in mean - radius
    const double lower = det / upper;
    out.omega_plus = std::sqrt(upper);
    out.omega_minus = std::sqrt(lower);
    out.splitting = out.omega_plus - out.omega_minus;

    // lower eigenvector (x_c, x_B); pick the better-conditioned null-space row
    double x_c = 0.0;
    double x_B = 0.0;
    if (out.k_cb == 0.0) {
        if (out.k_bb <= out.k_cc) {
            x_B = 1.0;
        } else {
            x_c = 1.0;
        }
    } else if (std::abs(lower - out.k_cc) > std::abs(lower - out.k_bb)) {
        x_c = out.k_cb;
        x_B = lower - out.k_cc;
    } else {
        x_c = lower - out.k_bb;
        x_B = out.k_cb;
    }
    out.mixing_angle = std::atan2(std::abs(x_c), std::abs(x_B));
    return out;
}

Spectrum dft_power(std::span<const double> times, std::span<const double> values, double omega_max) {
    if (times.size() != values.size() || times.size() < 4) {
        throw ObservableError("spectrum needs at least 4 uniformly spaced samples");
    }
    const std::size_t n = values.size();
    const double step = (times.back() - times.front()) / static_cast<double>(n - 1);
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);

    Spectrum spec;
    spec.bin = 2.0 * std::numbers::pi / (static_cast<double>(n) * step);
    const double nyquist = std::numbers::pi / step;
    const auto n_bins = static_cast<std::size_t>(std::min(omega_max, nyquist) / spec.bin) + 1;
    spec.omega.resize(n_bins);
    spec.power.resize(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        const double w = static_cast<double>(k) * spec.bin;
        // phasor recurrence: exp(-i w m step) advanced by one rotation per sample
        const Complex rot = std::polar(1.0, -w * step);
        Complex phase(1.0, 0.0);
        Complex acc(0.0, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            acc += (values[m] - mean) * phase;
            phase *= rot;
        }
        spec.omega[k] = w;
        spec.power[k] = std::norm(acc);
    }
    return spec;
}

std::vector<SpectralPeak> spectral_peaks(const Spectrum& spec, std::size_t first_bin, double floor_fraction) {
    std::vector<SpectralPeak> peaks;
    const auto& pw = spec.power;
    if (pw.size() < 3 || first_bin + 1 >= pw.size()) return peaks;
    const double global = *std::max_element(pw.begin() + static_cast<std::ptrdiff_t>(first_bin), pw.end());
    if (!(global > 0.0)) return peaks;
    for (std::size_t k = std::max<std::size_t>(first_bin, 1); k + 1 < pw.size(); ++k) {
        if (pw[k] > pw[k - 1] && pw[k] >= pw[k + 1] && pw[k] >= floor_fraction * global) {
            const double a = pw[k - 1];
            const double b = pw[k];
            const double c = pw[k + 1];
            const double denom = a - 2.0 * b + c;
            const double delta = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
            peaks.push_back({(static_cast<double>(k) + delta) * spec.bin, b});
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const SpectralPeak& x, const SpectralPeak& y) { return x.power > y.power; });
    return peaks;
}

namespace {

// Mean spacing between maxima of the slow envelope of E_B(t).
double beat_period_from_energy(std::span<const double> times, std::span<const double> e_b, double fast_omega) {
    const std::size_t n = e_b.size();
    if (n < 8 || !(fast_omega > 0.0)) return 0.0;
    const double step = (times.back() - times.front()) / static_cast<double>(n - 1);
    // E_B oscillates at twice the carrier; average over one carrier period
    const auto half_window =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::numbers::pi / fast_omega / step));
    std::vector<double> smooth(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half_window ? i - half_window : 0;
        const std::size_t hi = std::min(n - 1, i + half_window);
        double acc = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) acc += e_b[j];
        smooth[i] = acc / static_cast<double>(hi - lo + 1);
    }
    std::vector<double> maxima;
    for (std::size_t i = half_window; i + half_window < n; ++i) {
        if (smooth[i] > smooth[i - 1] && smooth[i] >= smooth[i + 1]) maxima.push_back(times[i]);
    }
    if (maxima.size() < 2) return 0.0;
    return (maxima.back() - maxima.front()) / static_cast<double>(maxima.size() - 1);
}

}  // namespace

RabiEstimate rabi_splitting(std::span<const double> times, std::span<const double> q_B,
                            std::span<const double> E_B, double t_begin) {
    const auto first = static_cast<std::size_t>(
        std::lower_bound(times.begin(), times.end(), t_begin) - times.begin());
    if (times.size() < first + 8) throw ObservableError("no polariton beating detected");
    const auto t = times.subspan(first);
    const auto q = q_B.subspan(first);
    const auto e = E_B.subspan(first);

    constexpr double kOmegaMax = 0.05;
    // secondary peak must clear the rectangular-window sidelobes of the main one
    constexpr double kPeakFloor = 0.05;
    constexpr std::size_t kSkipBins = 3;

    const Spectrum spec = dft_power(t, q, kOmegaMax);
    const std::vector<SpectralPeak> peaks = spectral_peaks(spec, kSkipBins, kPeakFloor);

    RabiEstimate r;
    r.bin_au = spec.bin;
    if (peaks.size() >= 2) {
        r.lower_au = std::min(peaks[0].omega, peaks[1].omega);
        r.upper_au = std::max(peaks[0].omega, peaks[1].omega);
        r.splitting_au = r.upper_au - r.lower_au;
        r.from_spectrum = true;
    } else {
        const double fast = peaks.empty() ? 0.0 : peaks[0].omega;
        const double period = beat_period_from_energy(t, e, fast);
        if (!(period > 0.0)) throw ObservableError("no polariton beating detected");
        r.splitting_au = 2.0 * std::numbers::pi / period;
        r.lower_au = r.upper_au = fast;
        r.from_spectrum = false;
    }
    r.period_fs = au_to_fs(2.0 * std::numbers::pi / r.splitting_au);
    r.splitting_cm1 = au_to_cm1(r.splitting_au);
    return r;
}

RabiEstimate rabi_splitting_from_trajectory(const Trajectory& traj) {
    const double t_begin = traj.params.pulse.t_start + 5.0 * traj.params.pulse.sigma;
    return rabi_splitting(traj.times, traj.q_B, traj.E_B, t_begin);
}

LifetimeFit fit_exponential_lifetime(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size()) throw ObservableError("times and values differ in length");
    if (times.size() < 2) throw ObservableError("lifetime fit needs at least 2 samples");
    const std::size_t n = values.size();
    std::vector<double> log_y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(values[i] > 0.0)) {
            throw ObservableError("non-positive value at t = " + std::to_string(times[i]) + " in lifetime fit window");
        }
        log_y[i] = std::log(values[i]);
    }
    const double mean_t = std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(n);
    const double mean_y = std::accumulate(log_y.begin(), log_y.end(), 0.0) / static_cast<double>(n);
    double s_tt = 0.0;
    double s_ty = 0.0;
    double s_yy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = times[i] - mean_t;
        const double dy = log_y[i] - mean_y;
        s_tt += dt * dt;
        s_ty += dt * dy;
        s_yy += dy * dy;
    }
    if (!(s_tt > 0.0)) throw ObservableError("degenerate time axis in lifetime fit");

    LifetimeFit fit;
    if (s_yy == 0.0) {
        fit.slope = 0.0;
        fit.r_squared = 0.0;
        fit.low_confidence = true;
        return fit;
    }
    fit.slope = s_ty / s_tt;
    fit.r_squared = (s_ty * s_ty) / (s_tt * s_yy);
    fit.tau = fit.slope < 0.0 ? -1.0 / fit.slope : std::numeric_limits<double>::infinity();
    fit.low_confidence = fit.r_squared < 0.9 || !(fit.slope < 0.0);
    return fit;
}

}  // namespace casimir
