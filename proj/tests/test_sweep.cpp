#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "casimir/sweep.hpp"
#include "casimir/units.hpp"

using namespace casimir;

namespace {

Params short_base() {
    Params p;
    p.n_dark = 50;
    p.record_stride = 100;
    return p;
}

}  // namespace

TEST_CASE("parameter names round-trip") {
    for (auto p : {SweepParam::LambdaC, SweepParam::NE, SweepParam::E0, SweepParam::DeltaD, SweepParam::OmegaC,
                   SweepParam::NV, SweepParam::GammaE, SweepParam::GammaC, SweepParam::GammaVTotal}) {
        CHECK(sweep_param_from_string(to_string(p)) == p);
    }
    CHECK_THROWS_AS(sweep_param_from_string("d_v"), ValidationError);
}

TEST_CASE("overrides") {
    Params base;
    base.d_gg = 0.2;
    const Params p = with_override(base, SweepParam::DeltaD, 0.5);
    CHECK(p.d_gg == 0.2);
    CHECK(p.d_ee == doctest::Approx(0.7));
    CHECK(p.delta_d() == doctest::Approx(0.5));
    CHECK(with_override(base, SweepParam::E0, 0.02).pulse.E0 == 0.02);
    CHECK(with_override(base, SweepParam::GammaVTotal, 1e-7).gamma_v_total == 1e-7);
}

TEST_CASE("log range") {
    const auto v = log_range(1e-7, 1e-5, 3);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 1e-7);
    CHECK(v[1] == doctest::Approx(1e-6));
    CHECK(v[2] == 1e-5);
    CHECK(log_range(2.0, 2.0, 1) == std::vector<double>{2.0});
    CHECK_THROWS_AS(log_range(0.0, 1.0, 4), ValidationError);
    CHECK_THROWS_AS(log_range(1.0, 2.0, 0), ValidationError);
}

TEST_CASE("sweep rows follow the request order and match single runs") {
    SweepSpec spec;
    spec.base = short_base();
    spec.param = SweepParam::LambdaC;
    spec.values = {2e-6, 0.0, 1e-6};
    spec.observable_time = 3000.0;
    spec.workers = 3;
    const SweepTable table = run_sweep(spec);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].value == 2e-6);
    CHECK(table.rows[1].value == 0.0);
    CHECK(table.rows[2].value == 1e-6);
    CHECK(table.rows[1].E_D_cm1 == 0.0);
    for (const auto& r : table.rows) CHECK(r.ok);

    const SweepRow single = run_row(spec.base, spec.param, 1e-6, spec.observable_time);
    CHECK(single.E_D_cm1 == table.rows[2].E_D_cm1);
    CHECK(single.P_e_max == table.rows[2].P_e_max);

    spec.workers = 1;
    const SweepTable serial = run_sweep(spec);
    for (std::size_t i = 0; i < 3; ++i) CHECK(serial.rows[i].E_D_cm1 == table.rows[i].E_D_cm1);
}

TEST_CASE("failed rows are reported, not fatal") {
    SweepSpec spec;
    spec.base = short_base();
    spec.param = SweepParam::LambdaC;
    spec.values = {-1.0, 1e-6};
    spec.observable_time = 200.0;
    const SweepTable table = run_sweep(spec);
    CHECK_FALSE(table.rows[0].ok);
    CHECK(table.rows[0].status.rfind("failed:", 0) == 0);
    CHECK(table.rows[1].ok);

    spec.values = {};
    CHECK_THROWS_AS(run_sweep(spec), ValidationError);
    spec.values = {std::nan("")};
    CHECK_THROWS_AS(run_sweep(spec), ValidationError);
}

TEST_CASE("fit window") {
    SweepSpec spec;
    spec.base = short_base();
    spec.param = SweepParam::E0;
    spec.values = log_range(1e-4, 1e-3, 4);
    spec.observable_time = 3000.0;
    spec.fit_window = IndexRange{0, 4};
    const SweepTable table = run_sweep(spec);
    REQUIRE(table.fit.has_value());
    // the photon energy already carries the quartic pulse law at short times
    CHECK(table.fit->r_squared > 0.9);

    spec.values = {0.0, 1e-3, 2e-3};
    spec.fit_window = IndexRange{0, 3};
    const SweepTable skipped = run_sweep(spec);
    CHECK_FALSE(skipped.fit.has_value());
    CHECK(skipped.fit_note.find("fit skipped") == 0);
}

TEST_CASE("detuning scan summary") {
    SweepTable t;
    t.param = SweepParam::OmegaC;
    t.base.omega_v = 0.01;
    for (auto [w, e] : {std::pair{0.007, 1.0}, {0.01, 10.0}, {0.013, 2.0}}) {
        SweepRow r;
        r.value = w;
        r.E_D_cm1 = e;
        r.ok = true;
        t.rows.push_back(r);
    }
    ResonanceSummary s = summarize_resonance(t);
    CHECK(s.defined);
    CHECK(s.peak_detuning == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.contrast == doctest::Approx(5.0));

    for (auto& r : t.rows) r.E_D_cm1 = 0.0;
    CHECK_FALSE(summarize_resonance(t).defined);

    SweepSpec spec;
    spec.param = SweepParam::OmegaC;
    spec.values = {0.011, 0.012};
    CHECK_THROWS_AS(detuning_scan(spec), ValidationError);
    spec.values = {};
    CHECK_THROWS_AS(detuning_scan(spec), ValidationError);
}

TEST_CASE("uncoupled detuning scan is flagged undefined") {
    SweepSpec spec;
    spec.base = short_base();
    spec.base.lambda_c = 0.0;
    spec.param = SweepParam::OmegaC;
    spec.values = {0.009, 0.01, 0.011};
    spec.observable_time = 500.0;
    const DetuningScan scan = detuning_scan(spec);
    for (const auto& r : scan.table.rows) CHECK(r.E_D_cm1 == 0.0);
    CHECK_FALSE(scan.summary.defined);
}

TEST_CASE("worker count honours the environment") {
    ::setenv("CASIMIR_WORKERS", "3", 1);
    CHECK(default_worker_count() == 3);
    ::unsetenv("CASIMIR_WORKERS");
    CHECK(default_worker_count() >= 1);
}
