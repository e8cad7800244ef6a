#include <doctest.h>

#include <cmath>
#include <sstream>

#include "nudge2d/advisor.hpp"
#include "nudge2d/assimilation.hpp"
#include "nudge2d/errors.hpp"
#include "nudge2d/inequality_lab.hpp"
#include "nudge2d/transforms.hpp"
#include "test_support.hpp"

using namespace nudge2d;

namespace {

SolverConfig twin_config() {
  SolverConfig c;
  c.grid = Grid(64);
  c.nu = 1e-2;
  c.dt = 0.01;
  c.forcing.nu = c.nu;
  c.forcing.grashof = 2e3;
  c.forcing.seed = 3;
  return c;
}

}  // namespace

TEST_CASE("error metrics examples") {
  const Grid g(32);
  const SpectralField ref = sample_bandlimited(6, 1, g);
  const std::vector<Mask> regions{mask_at(named_subdomain("omega4"), g, 0.0)};
  const ErrorRow same = error_metrics(ref, ref, regions);
  CHECK(same.rel_l2 == 0.0);
  CHECK(same.rel_linf == 0.0);
  CHECK(same.rel_l2_regions.at(0) == 0.0);

  const ErrorRow zero = error_metrics(ref, SpectralField(g), regions);
  CHECK(zero.rel_l2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zero.rel_linf == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zero.rel_l2_regions.at(0) == doctest::Approx(1.0).epsilon(1e-15));

  const ErrorRow twice = error_metrics(ref, 2.0 * ref, {});
  CHECK(twice.rel_l2 == doctest::Approx(1.0).epsilon(1e-15));

  const SpectralField other = sample_bandlimited(6, 2, g);
  const ErrorRow ab = error_metrics(ref, other, {});
  const ErrorRow ba = error_metrics(other, ref, {});
  const double num_ab = ab.rel_l2 * l2_norm(ref);
  const double num_ba = ba.rel_l2 * l2_norm(other);
  CHECK(num_ab == doctest::Approx(num_ba).epsilon(1e-13));

  CHECK_THROWS_AS(error_metrics(SpectralField(g), ref, {}), DegenerateError);
}

TEST_CASE("nudged step with mu = 0 matches the plain scheme bit for bit") {
  const SolverConfig config = twin_config();
  const SolverState ref = spinup(config, 0.5);
  SolverState assim(sample_bandlimited(8, 4, config.grid), ref.time, ref.step_count);
  assim.history = ref.history;
  assim.history_len = ref.history_len;

  NudgingParams params;
  params.mu = 0.0;
  params.observation.subdomain = named_subdomain("omega1");
  params.observation.stride_p = 2;
  NudgedStepper stepper(config, params);
  Integrator plain(config);
  SolverState r = ref, a = assim, control = assim;
  for (int i = 0; i < 20; ++i) {
    stepper.step(r, a, i * config.dt);
    plain.step(control);
  }
  CHECK(a.omega == control.omega);
}

TEST_CASE("identical states stay synchronized") {
  const SolverConfig config = twin_config();
  SolverState ref = spinup(config, 0.5);
  SolverState assim = ref;
  NudgingParams params;
  params.observation.subdomain = named_subdomain("omega2");
  params.observation.stride_p = 1;
  NudgedStepper stepper(config, params);
  for (int i = 0; i < 100; ++i) stepper.step(ref, assim, i * config.dt);
  CHECK(error_metrics(ref.omega, assim.omega, {}).rel_l2 < 1e-12);
}

TEST_CASE("full observation nudge equals -mu times the difference") {
  const SolverConfig config = twin_config();
  const SolverState ref = spinup(config, 0.2);
  SolverState assim(sample_bandlimited(8, 9, config.grid), ref.time, ref.step_count);
  assim.history = ref.history;
  assim.history_len = ref.history_len;

  NudgingParams params;
  params.mu = 50.0;
  NudgedStepper stepper(config, params);
  SolverState r = ref, a = assim;
  stepper.step(r, a, 0.0);

  Integrator integ(config);
  SpectralField rhs = integ.explicit_rhs(assim.omega);
  rhs.axpy(-50.0, assim.omega - ref.omega);
  SolverState manual = assim;
  integ.advance(manual, rhs);
  CHECK(nudge2d::testing::max_abs_difference(manual.omega, a.omega) < 1e-14);
}

TEST_CASE("clock mismatch is rejected") {
  const SolverConfig config = twin_config();
  SolverState ref = spinup(config, 0.1);
  SolverState assim(config.grid);
  NudgedStepper stepper(config, NudgingParams{});
  CHECK_THROWS_AS(stepper.step(ref, assim, 0.0), ContractError);
  NudgingParams negative;
  negative.mu = -1.0;
  CHECK_THROWS_AS(NudgedStepper(config, negative), ContractError);
}

TEST_CASE("run_twin") {
  TwinExperiment exp;
  exp.config = twin_config();
  exp.reference = spinup(exp.config, 1.0);
  exp.horizon = 0.0;
  const ErrorSeries zero = run_twin(exp);
  REQUIRE(zero.rows.size() == 1);
  CHECK(zero.rows[0].rel_l2 == 1.0);
  CHECK(zero.rows[0].t == 0.0);

  exp.horizon = 2.0;
  exp.sample_interval = 0.25;
  exp.regions = {named_subdomain("omega4")};
  exp.snapshot_times = {1.0};
  exp.mask_times = {0.0, 0.5};
  exp.nudging.observation.subdomain = SubdomainSpec::mobile_quarter();
  int snapshots = 0, masks = 0;
  std::ostringstream csv;
  write_error_header(csv, exp.regions.size());
  TwinSinks sinks;
  sinks.on_row = [&](const ErrorRow& row) { write_error_row(csv, row); };
  sinks.on_snapshot = [&](double t, const PhysicalField& r, const PhysicalField& a,
                          const PhysicalField& d) {
    ++snapshots;
    CHECK(t == 1.0);
    for (std::size_t i = 0; i < d.values().size(); ++i) {
      CHECK(d.values()[i] == a.values()[i] - r.values()[i]);
    }
  };
  sinks.on_mask = [&](double, const Mask& m) {
    ++masks;
    CHECK(m.fraction() == 0.25);
  };
  const ErrorSeries s = run_twin(exp, sinks);
  CHECK(s.rows.size() == 9);
  CHECK(s.rows.back().t == doctest::Approx(2.0));
  CHECK(s.rows.back().rel_l2 < s.rows.front().rel_l2);
  CHECK(snapshots == 1);
  CHECK(masks == 2);
  CHECK(csv.str().rfind("t,rel_l2,rel_linf,rel_l2_region_0\n0,1,1,1\n", 0) == 0);

  const ErrorSeries again = run_twin(exp);
  REQUIRE(again.rows.size() == s.rows.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i) CHECK(again.rows[i].rel_l2 == s.rows[i].rel_l2);
}

TEST_CASE("fit_rate") {
  ErrorSeries exp_series;
  for (int i = 0; i <= 40; ++i) {
    const double t = 0.5 * i;
    exp_series.rows.push_back({t, std::exp(-0.3 * t), 0.0, {}});
  }
  const RateFit fit = fit_rate(exp_series, 0.0, 20.0);
  CHECK(std::abs(fit.lambda - 0.3) < 1e-9);
  CHECK(fit.r_squared > 1 - 1e-12);
  CHECK(fit.samples == 41);

  ErrorSeries flat;
  for (int i = 0; i < 10; ++i) flat.rows.push_back({double(i), 0.2, 0.0, {}});
  CHECK(fit_rate(flat, 0, 10).lambda == 0.0);

  ErrorSeries floor = flat;
  floor.rows[3].rel_l2 = 0.0;
  CHECK_THROWS_AS(fit_rate(floor, 0, 10), NumericalError);
  CHECK_THROWS_AS(fit_rate(flat, 0, 3), ContractError);

  CHECK(time_to_threshold(exp_series, 1e-2) == doctest::Approx(15.5));
  CHECK(time_to_threshold(exp_series, 1e-9) < 0.0);
}

TEST_CASE("advisor") {
  AdvisorInputs in;
  in.nu = 1.0;
  in.grashof = 1.0;
  in.c = in.c_omega = in.c0 = 1.0;
  in.n_modes = 0.0;
  const Advice a = advise_parameters(in);
  CHECK(a.mu == doctest::Approx(2.0));
  CHECK(a.h_star == doctest::Approx(std::sqrt(1.0 / 8)));
  CHECK(a.sigma_star == 1.0);

  AdvisorInputs doubled = in;
  doubled.grashof = 2.0;
  const Advice b = advise_parameters(doubled);
  CHECK(b.mu == doctest::Approx(4 * a.mu));
  CHECK(b.h_star / a.h_star == doctest::Approx(0.5));

  AdvisorInputs huge = in;
  huge.n_modes = 1e8;
  CHECK_THROWS_WITH_AS(advise_parameters(huge), doctest::Contains("10000"), NumericalError);
  AdvisorInputs bad = in;
  bad.nu = 0.0;
  CHECK_THROWS_AS(advise_parameters(bad), ContractError);
}
