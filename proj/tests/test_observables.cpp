#include <doctest.h>

#include <cmath>
#include <numbers>

#include "casimir/dynamics.hpp"
#include "casimir/observables.hpp"
#include "casimir/units.hpp"

using namespace casimir;

TEST_CASE("energies") {
    const Params p;
    SystemState s = initial_state(p);
    EnergyReport e = energies(s, p);
    CHECK(e.E_e == 0.0);
    CHECK(e.E_c == 0.0);
    CHECK(e.E_B == 0.0);
    CHECK(e.E_D == 0.0);

    s.p_c = 1.0;
    e = energies(s, p);
    CHECK(e.E_c == 0.5);
    CHECK(e.E_e + e.E_B + e.E_D == 0.0);

    // re-equilibrated photon after full excitation
    s = initial_state(p);
    s.rho.rho = Matrix2c::Zero();
    s.rho.rho(kExcited, kExcited) = 1.0;
    s.q_c = -p.lambda_c * p.n_e * p.d_ee / p.omega_c;
    e = energies(s, p);
    CHECK(std::abs(e.E_c) < 1e-6);
    CHECK(e.E_e == doctest::Approx(1e9));
}

TEST_CASE("E_c is invariant under a shift of the displaced coordinate") {
    const Params p;
    SystemState s = initial_state(p);
    s.q_c = 12.0;
    s.p_c = -0.3;
    s.q_B = 0.8;
    const double before = energies(s, p).E_c;
    // moving q_B by delta/slope shifts <mu> by delta
    const double delta = 250.0;
    s.q_B += delta / (std::sqrt(p.n_v) * p.d_v);
    s.q_c -= p.lambda_c * delta / p.omega_c;
    CHECK(energies(s, p).E_c == doctest::Approx(before).epsilon(1e-9));
}

TEST_CASE("excited population") {
    Matrix2c r = Matrix2c::Zero();
    r(0, 0) = 1.0;
    CHECK(excited_population(r) == 0.0);
    r(0, 0) = 0.0;
    r(1, 1) = 1.0;
    CHECK(excited_population(r) == 1.0);
    r(0, 0) = 0.75;
    r(1, 1) = 0.25;
    CHECK(excited_population(r) == 0.25);
}

TEST_CASE("polariton frequencies") {
    SUBCASE("no coupling") {
        Params p;
        p.lambda_c = 0.0;
        p.omega_c = 0.012;
        const PolaritonPair pp = polariton_frequencies(p);
        CHECK(pp.omega_minus == doctest::Approx(0.010).epsilon(1e-14));
        CHECK(pp.omega_plus == doctest::Approx(0.012).epsilon(1e-14));
        CHECK(pp.splitting == doctest::Approx(0.002).epsilon(1e-12));
    }
    SUBCASE("defaults") {
        const Params p;
        const PolaritonPair pp = polariton_frequencies(p);
        CHECK(pp.k_cb == doctest::Approx(2e-5));
        CHECK(pp.k_cc == doctest::Approx(1e-4));
        CHECK(pp.k_bb == doctest::Approx(1.04e-4));
        CHECK(pp.omega_minus == doctest::Approx(9.05e-3).epsilon(2e-3));
        CHECK(pp.omega_plus == doctest::Approx(1.105e-2).epsilon(2e-3));
        CHECK(pp.splitting == doctest::Approx(2.0e-3).epsilon(0.01));
        CHECK(au_to_cm1(pp.splitting) == doctest::Approx(439.0).epsilon(0.01));
        // independent check: eigenvalues of K reproduce trace and determinant
        const double l1 = pp.omega_minus * pp.omega_minus;
        const double l2 = pp.omega_plus * pp.omega_plus;
        CHECK(l1 + l2 == doctest::Approx(pp.k_cc + pp.k_bb).epsilon(1e-14));
        CHECK(l1 * l2 == doctest::Approx(pp.k_cc * pp.k_bb - pp.k_cb * pp.k_cb).epsilon(1e-13));
    }
    SUBCASE("far-detuned cavity decouples") {
        Params p;
        p.omega_c = 0.05;
        const PolaritonPair pp = polariton_frequencies(p);
        CHECK(std::abs(pp.omega_minus - p.omega_v) < 1e-5);
        CHECK(pp.mixing_angle < 0.05);
    }
    SUBCASE("ordering holds across couplings") {
        Params p;
        for (double lam : {0.0, 1e-7, 1e-6, 5e-6, 2e-5}) {
            p.lambda_c = lam;
            const PolaritonPair pp = polariton_frequencies(p);
            CHECK(pp.omega_plus >= pp.omega_minus);
            CHECK(pp.omega_minus > 0.0);
            CHECK(pp.splitting == pp.omega_plus - pp.omega_minus);
        }
    }
}

TEST_CASE("Rabi splitting from a constructed beat") {
    const double w1 = 0.009;
    const double w2 = 0.011;
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> e;
    for (int i = 0; i < 8000; ++i) {
        t.push_back(25.0 * i);
        q.push_back(std::cos(w1 * t.back()) + std::cos(w2 * t.back()));
        e.push_back(q.back() * q.back());
    }
    const RabiEstimate r = rabi_splitting(t, q, e, 0.0);
    CHECK(r.from_spectrum);
    CHECK(std::abs(r.splitting_au - 2e-3) <= r.bin_au);
    CHECK(std::abs(r.lower_au - w1) <= r.bin_au);
    CHECK(std::abs(r.upper_au - w2) <= r.bin_au);

    std::vector<double> flat(t.size(), 0.0);
    CHECK_THROWS_WITH_AS(rabi_splitting(t, flat, flat, 0.0), "no polariton beating detected", ObservableError);
}

TEST_CASE("spectrum peaks sit at the input frequencies") {
    std::vector<double> t;
    std::vector<double> v;
    for (int i = 0; i < 4096; ++i) {
        t.push_back(10.0 * i);
        v.push_back(std::sin(0.02 * t.back()) + 0.3 * std::sin(0.035 * t.back()));
    }
    const Spectrum spec = dft_power(t, v, 0.05);
    const auto peaks = spectral_peaks(spec, 3, 0.01);
    REQUIRE(peaks.size() >= 2);
    CHECK(std::abs(peaks[0].omega - 0.02) < spec.bin);
    CHECK(std::abs(peaks[1].omega - 0.035) < spec.bin);
    CHECK(peaks[0].power > peaks[1].power);
}

TEST_CASE("exponential lifetime fit") {
    std::vector<double> t;
    std::vector<double> y;
    const double tau = 1e5;
    for (int i = 0; i < 200; ++i) {
        t.push_back(1000.0 * i);
        y.push_back(0.2 * std::exp(-t.back() / tau));
    }
    LifetimeFit fit = fit_exponential_lifetime(t, y);
    CHECK(fit.tau == doctest::Approx(tau).epsilon(1e-6));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(fit.low_confidence);

    std::vector<double> flat(t.size(), 0.3);
    fit = fit_exponential_lifetime(t, flat);
    CHECK(fit.slope == 0.0);
    CHECK(std::isinf(fit.tau));
    CHECK(fit.low_confidence);

    y[5] = 0.0;
    CHECK_THROWS_AS(fit_exponential_lifetime(t, y), ObservableError);
}

TEST_CASE("uncoupled trajectory has no polariton beat") {
    Params p;
    p.lambda_c = 0.0;
    p.t_final = 20000.0;
    const Trajectory traj = integrate(p);
    CHECK_THROWS_WITH_AS(rabi_splitting_from_trajectory(traj), "no polariton beating detected", ObservableError);
}

TEST_CASE("spectral detection agrees with the normal modes while the splitting exceeds one bin") {
    Params p;
    p.t_final = 60000.0;
    p.record_stride = 20;
    for (double lam : {2e-6, 1.5e-6}) {
        p.lambda_c = lam;
        const Trajectory traj = integrate(p);
        const PolaritonPair pp = polariton_frequencies(p);
        const RabiEstimate r = rabi_splitting_from_trajectory(traj);
        REQUIRE(pp.splitting > r.bin_au);
        CHECK(std::abs(r.splitting_au - pp.splitting) <= r.bin_au);
    }
}
