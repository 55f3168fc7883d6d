#include <doctest.h>

#include <cmath>
#include <limits>

#include "schemeforge/errors.hpp"
#include "schemeforge/time_integrator.hpp"

using namespace schemeforge;

namespace {

OdeProblem decay(double lambda, double t_end, double dt) {
  OdeProblem p;
  p.rhs = [lambda](std::span<const double> u, double, std::span<double> du) {
    for (std::size_t i = 0; i < u.size(); ++i) du[i] = -lambda * u[i];
  };
  p.initial = {1.0, -2.0};
  p.t_end = t_end;
  p.dt = dt;
  return p;
}

// du/dt = cos(t) u, exact u0 exp(sin t); exercises the stage times.
OdeProblem forced(double dt) {
  OdeProblem p;
  p.rhs = [](std::span<const double> u, double t, std::span<double> du) { du[0] = std::cos(t) * u[0]; };
  p.initial = {1.0};
  p.t_end = 2.0;
  p.dt = dt;
  return p;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("step count and step fitting") {
  CHECK(step_count(0.0, 100.0, 0.1) == 1000);
  CHECK(step_count(1.0, 2.0, 0.25) == 4);
  CHECK(code_of([] { (void)step_count(0.0, 1.0, 0.3); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { (void)step_count(0.0, 1.0, 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(fit_step(0.0, 1.0, 0.3) == doctest::Approx(0.25));
  CHECK(fit_step(0.0, 1.0, 0.25) == 0.25);
  for (double dt : {0.013, 0.07, 0.9}) {
    const double f = fit_step(0.0, 5.0, dt);
    CHECK(f <= dt);
    CHECK_NOTHROW((void)step_count(0.0, 5.0, f));
  }
}

TEST_CASE("zero right-hand side leaves the state untouched") {
  for (int which : {0, 1}) {
    OdeProblem p;
    p.rhs = [](std::span<const double>, double, std::span<double> du) { std::fill(du.begin(), du.end(), 0.0); };
    p.initial = {0.25, -3.0, 7.5};
    p.t_end = 1.0;
    p.dt = 0.1;
    const auto r = which == 0 ? integrate_ssprk3(p) : integrate_dirk2(p);
    CHECK(r.state == p.initial);
    CHECK(r.stats.steps == 10);
  }
}

TEST_CASE("SSP-RK3 converges at third order") {
  std::vector<double> err;
  for (double dt : {0.1, 0.05, 0.025}) {
    const auto r = integrate_ssprk3(forced(dt));
    err.push_back(std::abs(r.state[0] - std::exp(std::sin(2.0))));
  }
  CHECK(std::log2(err[0] / err[1]) == doctest::Approx(3.0).epsilon(0.1));
  CHECK(std::log2(err[1] / err[2]) == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("SSP-RK3 one step matches the cubic Taylor polynomial on linear decay") {
  const double z = -0.3;
  const auto r = integrate_ssprk3(decay(1.0, 0.3, 0.3));
  const double amp = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
  CHECK(r.state[0] == doctest::Approx(amp).epsilon(1e-14));
  CHECK(r.state[1] == doctest::Approx(-2.0 * amp).epsilon(1e-14));
  CHECK(r.stats.rhs_evaluations == 3);
}

TEST_CASE("DIRK2 converges at second order") {
  std::vector<double> err;
  for (double dt : {0.1, 0.05, 0.025}) {
    const auto r = integrate_dirk2(forced(dt));
    err.push_back(std::abs(r.state[0] - std::exp(std::sin(2.0))));
  }
  CHECK(std::log2(err[0] / err[1]) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(std::log2(err[1] / err[2]) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("DIRK2 one step equals its stability function") {
  const double g = 1.0 - 1.0 / std::sqrt(2.0);
  for (double z : {-0.5, -10.0, -1000.0}) {
    const auto r = integrate_dirk2(decay(-z, 1.0, 1.0));
    const double want = (1.0 + (1.0 - 2.0 * g) * z) / ((1.0 - g * z) * (1.0 - g * z));
    CHECK(r.state[0] == doctest::Approx(want).epsilon(1e-8).scale(1e-9));
  }
}

TEST_CASE("DIRK2 damps stiff modes at large steps") {
  // Explicit methods diverge at lambda dt = 1e4; L-stability drives the state to zero.
  const auto r = integrate_dirk2(decay(1e4, 10.0, 1.0));
  CHECK(std::abs(r.state[0]) < 1e-6);
  CHECK(std::abs(integrate_ssprk3(decay(1e4, 10.0, 1.0)).state[0]) > 1e50);
}

TEST_CASE("evaluation bookkeeping") {
  const auto e = integrate_ssprk3(decay(1.0, 1.0, 0.1));
  CHECK(e.stats.rhs_evaluations == 3 * e.stats.steps);
  CHECK(e.stats.newton_rhs_evaluations == 0);

  OdeProblem nl;
  nl.rhs = [](std::span<const double> u, double, std::span<double> du) {
    for (std::size_t i = 0; i < u.size(); ++i) du[i] = u[i] * (1.0 - u[i]) * (u[i] - 0.5);
  };
  nl.initial = {0.1, 0.6, 0.9};
  nl.t_end = 5.0;
  nl.dt = 0.5;
  const auto d = integrate_dirk2(nl);
  CHECK(d.stats.steps == 10);
  CHECK(d.stats.rhs_evaluations == 2 * d.stats.steps + d.stats.newton_rhs_evaluations);
  CHECK(d.stats.newton_iterations > 0);
  CHECK(d.stats.krylov_iterations >= d.stats.newton_iterations);
  CHECK(d.stats.wall_seconds >= 0.0);
}

TEST_CASE("observer sees the initial state and every step") {
  auto p = decay(1.0, 1.0, 0.25);
  std::vector<std::size_t> steps;
  std::vector<double> times;
  p.observer = [&](std::size_t k, double t, std::span<const double>) {
    steps.push_back(k);
    times.push_back(t);
  };
  (void)integrate_dirk2(p);
  CHECK(steps == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(times.back() == 1.0);
}

TEST_CASE("runs are deterministic") {
  const auto a = integrate_dirk2(forced(0.05));
  const auto b = integrate_dirk2(forced(0.05));
  CHECK(a.state == b.state);
  CHECK(a.stats.newton_iterations == b.stats.newton_iterations);
}

TEST_CASE("failures are typed") {
  OdeProblem bad;
  bad.rhs = [](std::span<const double>, double, std::span<double> du) {
    du[0] = std::numeric_limits<double>::quiet_NaN();
  };
  bad.initial = {1.0};
  bad.t_end = 1.0;
  bad.dt = 0.5;
  CHECK(code_of([&] { (void)integrate_ssprk3(bad); }) == ErrorCode::NonFiniteState);
  CHECK(code_of([&] { (void)integrate_dirk2(bad); }) == ErrorCode::NonFiniteState);

  // No real root: y - 1 - gdt (1 + y^2) = 0 has none for gdt = 1.
  OdeProblem noroot;
  noroot.rhs = [](std::span<const double> u, double, std::span<double> du) { du[0] = 1.0 + u[0] * u[0]; };
  noroot.initial = {1.0};
  noroot.t_end = 1.0 / (1.0 - 1.0 / std::sqrt(2.0));
  noroot.dt = noroot.t_end;
  NewtonOptions opt;
  opt.max_iterations = 5;
  const auto c = code_of([&] { (void)integrate_dirk2(noroot, opt); });
  CHECK((c == ErrorCode::NewtonDivergence || c == ErrorCode::NonFiniteState));

  opt.tol = 0.0;
  CHECK(code_of([&] { (void)integrate_dirk2(decay(1.0, 1.0, 0.5), opt); }) == ErrorCode::InvalidArgument);
  OdeProblem empty = decay(1.0, 1.0, 0.5);
  empty.rhs = nullptr;
  CHECK_THROWS_AS(integrate_ssprk3(empty), Error);
}

TEST_CASE("time series and fixed-stride sampling") {
  TimeSeries ts({"a", "b"});
  auto p = decay(1.0, 2.0, 0.1);
  p.observer = sample_every(0.5, [&](double t, std::span<const double> u) { ts.add(t, {u[0], u[1]}); });
  (void)integrate_ssprk3(p);
  REQUIRE(ts.times().size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(ts.times()[k] == doctest::Approx(0.5 * k));
  CHECK(ts.rows()[0] == std::vector<double>{1.0, -2.0});
  const auto csv = ts.csv();
  CHECK(csv.rfind("t,a,b\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK_THROWS_AS(ts.add(3.0, {1.0}), Error);
}
