#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "landau/basis.hpp"
#include "landau/collision_operator.hpp"
#include "landau/coupling.hpp"
#include "landau/error.hpp"
#include "landau/initial_data.hpp"
#include "landau/solver.hpp"

using namespace landau;

namespace {

SpectralState delta(int N, const ModeIndex& m, cplx a = 1.0)
{
  SpectralState s(N);
  s.set(m, a);
  return s;
}

double max_diff(const SpectralState& a, const SpectralState& b)
{
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return worst;
}

// Classical RK4 for a scalar ODE y' = F(t, y).
template <class F>
cplx rk4_scalar(F f, cplx y, double t_final, int steps)
{
  const double h = t_final / steps;
  double t = 0.0;
  for (int i = 0; i < steps; ++i) {
    const cplx k1 = f(t, y);
    const cplx k2 = f(t + h / 2, y + h / 2 * k1);
    const cplx k3 = f(t + h / 2, y + h / 2 * k2);
    const cplx k4 = f(t + h, y + h * k3);
    y += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return y;
}

}  // namespace

TEST_CASE("exponential polynomial algebra")
{
  ExpPoly p;
  p.add({2.0, {1.0, 3.0}});
  p.add({2.0 + 1e-12, {0.5}});
  REQUIRE(p.terms().size() == 1);
  CHECK(p(0.0) == cplx{1.5, 0.0});
  CHECK(std::abs(p(1.0) - 4.5 * std::exp(-2.0)) < 1e-14);
  ExpPoly q;
  q.add(p, cplx{0.0, 2.0}, 1.0);
  CHECK(std::abs(q(1.0) - cplx{0.0, 9.0} * std::exp(-3.0)) < 1e-14);
}

TEST_CASE("forced mode: non-resonant and resonant")
{
  // g' + 5 g = 2 e^{-t}: g = (g0 - 1/2) e^{-5t} + e^{-t}/2.
  ExpPoly f;
  f.add({1.0, {2.0}});
  const ExpPoly g = solve_forced_mode(5.0, 1.0, f);
  for (double t : {0.0, 0.3, 1.7}) CHECK(std::abs(g(t) - (0.5 * std::exp(-5 * t) + 0.5 * std::exp(-t))) < 1e-14);

  // Resonant: g' + 3 g = (1 + t) e^{-3t} gives g = (g0 + t + t^2/2) e^{-3t}.
  ExpPoly r;
  r.add({3.0, {1.0, 1.0}});
  const ExpPoly gr = solve_forced_mode(3.0, 2.0, r);
  for (double t : {0.0, 0.5, 2.0}) CHECK(std::abs(gr(t) - (2.0 + t + t * t / 2) * std::exp(-3 * t)) < 1e-14);

  // Near resonance inside the merge tolerance is treated as resonant.
  ExpPoly near;
  near.add({3.0 + 1e-11, {1.0}});
  const ExpPoly gn = solve_forced_mode(3.0, 0.0, near);
  CHECK(std::abs(gn(1.0) - std::exp(-3.0)) < 1e-10);

  // Mixed forcing against an independent RK4 integration.
  ExpPoly mix;
  mix.add({4.0, {cplx{1.0, -1.0}, 2.0, -0.5}});
  mix.add({1.5, {0.7}});
  const ExpPoly gm = solve_forced_mode(4.0, cplx{0.2, 0.1}, mix);
  const cplx ref = rk4_scalar([&](double t, cplx y) { return -4.0 * y + mix(t); }, cplx{0.2, 0.1}, 2.0, 4000);
  CHECK(std::abs(gm(2.0) - ref) < 1e-12);
}

TEST_CASE("cascade: shell-2 data")
{
  const int N = 8;
  const CouplingTensor t = build_tensor(N);
  const SpectralState init = delta(N, {0, 2, 0}, 0.25);
  const ExpPolyTrajectory traj = solve_cascade(init, t);
  const double a = 0.25 * 0.25;
  for (double s : {0.0, 0.1, 0.7, 1.0, 3.0}) {
    CHECK(std::abs(traj.mode({0, 2, 0})(s) - 0.25 * std::exp(-12 * s)) <= 1e-15);
    const double e24 = std::exp(-24 * s);
    const cplx g040 = traj.mode({0, 4, 0})(s);
    CHECK(std::abs(g040 - a * A3(0, 2, 0, 0) / (28.0 - 24.0) * (e24 - std::exp(-28 * s))) <= 1e-14);
    const cplx g120 = traj.mode({1, 2, 0})(s);
    CHECK(std::abs(g120 - a * A2(0, 2, 0, 0) / (14.0 - 24.0) * (e24 - std::exp(-14 * s))) <= 1e-14);
    const cplx g200 = traj.mode({2, 0, 0})(s);
    CHECK(std::abs(g200 - a * A1(0, 2, 0, 0) / (8.0 - 24.0) * (e24 - std::exp(-8 * s))) <= 1e-14);
    CHECK(traj.mode({0, 3, 1})(s) == cplx{0.0, 0.0});
  }
}

TEST_CASE("cascade: shell 3 alone decays linearly")
{
  const int N = 9;
  const CouplingTensor t = build_tensor(N);
  SpectralState init(N);
  init.set({1, 1, -1}, {0.1, 0.2});
  init.set({0, 3, 2}, 0.3);
  const ExpPolyTrajectory traj = solve_cascade(init, t);
  for (double s : {0.2, 1.0}) {
    const SpectralState st = traj.at(s);
    CHECK(std::abs(st.get({1, 1, -1}) - cplx{0.1, 0.2} * std::exp(-lambda_eig(1, 1) * s)) <= 1e-15);
    CHECK(std::abs(st.get({0, 3, 2}) - 0.3 * std::exp(-lambda_eig(0, 3) * s)) <= 1e-15);
    double rest = 0.0;
    for (const ModeIndex& m : st.modes()) {
      if (m.shell() != 3) rest += std::abs(st.get(m));
    }
    CHECK(rest == 0.0);
  }
}

TEST_CASE("cascade preconditions")
{
  const CouplingTensor t = build_tensor(6);
  try {
    solve_cascade(delta(6, {0, 1, 0}, 1e-6), t);
    FAIL("expected precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
  CHECK_NOTHROW(solve_cascade(delta(6, {0, 1, 0}, 1e-13), t));
  CHECK_THROWS_AS(solve_cascade(SpectralState(4), t), Error);
}

TEST_CASE("cascade and ETD-RK4 agree on random data")
{
  std::mt19937_64 rng(42);
  for (int N : {4, 6, 8}) {
    const CouplingTensor t = build_tensor(N);
    const SpectralState init = random_nperp_state(N, 0.3, rng);
    const ExpPolyTrajectory traj = solve_cascade(init, t);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    const auto series = integrate_numeric(init, t, cfg);
    REQUIRE(series.size() == 1001);
    double worst = 0.0;
    for (std::size_t i = 0; i < series.size(); i += 50) worst = std::max(worst, max_diff(series[i], traj.at(series[i].time())));
    CHECK(worst <= 1e-9);
    CHECK(series.back().time() == doctest::Approx(1.0));
  }
}

TEST_CASE("ETD-RK4 reproduces the shell-2 decay")
{
  const int N = 6;
  const CouplingTensor t = build_tensor(N);
  SpectralState init(N);
  for (int m = -2; m <= 2; ++m) init.set({0, 2, m}, cplx{0.05 * (m + 3), 0.01 * m});
  IntegratorConfig cfg;
  const auto series = integrate_numeric(init, t, cfg);
  for (int m = -2; m <= 2; ++m) {
    const cplx expect = init.get({0, 2, m}) * std::exp(-12.0);
    CHECK(std::abs(series.back().get({0, 2, m}) - expect) / std::abs(expect) <= 1e-9);
  }
  double null_worst = 0.0;
  for (const auto& s : series) null_worst = std::max(null_worst, nullspace_residual(s));
  CHECK(null_worst <= 1e-12);

  const auto zero = integrate_numeric(SpectralState(N), t, cfg);
  for (cplx c : zero.back().coeffs()) CHECK(c == cplx{0.0, 0.0});
}

TEST_CASE("cascade method samples the closed form")
{
  const int N = 6;
  const CouplingTensor t = build_tensor(N);
  std::mt19937_64 rng(1);
  const SpectralState init = random_nperp_state(N, 0.2, rng);
  IntegratorConfig cfg;
  cfg.method = Method::Cascade;
  cfg.dt = 0.1;
  const auto series = integrate_numeric(init, t, cfg);
  REQUIRE(series.size() == 11);
  const ExpPolyTrajectory traj = solve_cascade(init, t);
  CHECK(series[7].time() == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(max_diff(series[7], traj.at(series[7].time())) == 0.0);
}

TEST_CASE("RK4 step-size guard and accuracy")
{
  const int N = 8;
  const CouplingTensor t = build_tensor(N);
  std::mt19937_64 rng(9);
  const SpectralState init = random_nperp_state(N, 0.2, rng);
  IntegratorConfig cfg;
  cfg.method = Method::Rk4;
  cfg.dt = 0.05;  // max lambda at N = 8 is 88
  try {
    integrate_numeric(init, t, cfg);
    FAIL("expected step-size error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepSize);
  }
  cfg.dt = 2.5e-4;
  const auto series = integrate_numeric(init, t, cfg);
  CHECK(max_diff(series.back(), solve_cascade(init, t).at(1.0)) <= 1e-9);
}

TEST_CASE("integrator configuration validation")
{
  IntegratorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  for (auto mutate : std::vector<void (*)(IntegratorConfig&)>{
           [](IntegratorConfig& c) { c.dt = 0.0; }, [](IntegratorConfig& c) { c.dt = 2.0; },
           [](IntegratorConfig& c) { c.c1 = -0.1; }, [](IntegratorConfig& c) { c.c1 = 1.5; },
           [](IntegratorConfig& c) { c.alpha = 0.5; }, [](IntegratorConfig& c) { c.t_final = -1.0; }}) {
    IntegratorConfig c;
    mutate(c);
    try {
      c.validate();
      FAIL("expected config error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Config);
    }
  }
  CHECK(method_from_string("etd-rk4") == Method::EtdRk4);
  CHECK(method_from_string("cascade") == Method::Cascade);
  CHECK(to_string(Method::Rk4) == "rk4");
  CHECK_THROWS_AS(method_from_string("euler"), Error);
}

TEST_CASE("parity of shells is preserved")
{
  const int N = 10;
  const CouplingTensor t = build_tensor(N);
  std::mt19937_64 rng(4);
  SpectralState init = random_nperp_state(N, 0.3, rng);
  for (const ModeIndex& m : init.modes()) {
    if (m.shell() % 2 == 1) init.set(m, 0.0);
  }
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  const auto series = integrate_numeric(init, t, cfg);
  for (const ModeIndex& m : series.back().modes()) {
    if (m.shell() % 2 == 1) CHECK(series.back().get(m) == cplx{0.0, 0.0});
  }
}

TEST_CASE("Gelfand-Shilov norm decays for small data")
{
  const int N = 12;
  const CouplingTensor t = build_tensor(N);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    const SpectralState init = random_nperp_state(N, 0.3, rng);
    REQUIRE(check_smallness(init, 0.05).pass);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 2.0;
    cfg.alpha = -2.0;
    const auto series = integrate_numeric(init, t, cfg);
    const auto rows = diagnostics(series, -2.0, 0.05);
    const double g0 = rows.front().q_alpha_norm;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].gs_norm * rows[i].gs_norm <= rows[i - 1].gs_norm * rows[i - 1].gs_norm + 1e-10);
      CHECK(rows[i].gs_norm <= g0 * (1.0 + 1e-12));
      CHECK(rows[i].energy_integral >= rows[i - 1].energy_integral);
    }
    // Energy identity budget: |g(t)|^2 plus the dissipated integral stays below |g0|^2.
    CHECK(rows.back().gs_norm * rows.back().gs_norm + rows.back().energy_integral <= g0 * g0);
  }
}

TEST_CASE("eigenvalues dominate the Shubin weight")
{
  for (int k = 2; k <= 40; ++k) {
    for (int l = k % 2; l <= k; l += 2) {
      const int n = (k - l) / 2;
      if (is_nullspace_mode({n, l, 0})) continue;
      CHECK(lambda_eig(n, l) >= 16.0 / 11.0 * (k + 1.5));
    }
  }
}

TEST_CASE("diagnostics examples")
{
  const int N = 4;
  SpectralState a = delta(N, {0, 2, 0}, 1.0);
  SpectralState b = delta(N, {0, 2, 0}, std::exp(-12.0));
  b.set_time(1.0);
  const auto rows = diagnostics({a, b}, 0.0, 0.0);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].q_alpha_norm == doctest::Approx(1.0));
  CHECK(rows[1].q_alpha_norm == doctest::Approx(std::exp(-12.0)));
  CHECK(rows[1].s2_norm == doctest::Approx(std::exp(-12.0)));
  CHECK(rows[1].nullspace_residual == 0.0);
  CHECK(rows[1].energy_integral == 0.0);
  const auto rows_c = diagnostics({a, b}, 0.0, 0.1);
  CHECK(rows_c[1].gs_norm == doctest::Approx(std::exp(-12.0 + 0.1 * 3.5)));
  // 0.1 * trapezoid of 3.5 * |g|^2 weights.
  const double e0 = 3.5;
  const double e1 = 3.5 * std::exp(2 * (-12.0 + 0.35));
  CHECK(rows_c[1].energy_integral == doctest::Approx(0.1 * 0.5 * (e0 + e1)));
}

TEST_CASE("smallness threshold")
{
  CHECK(smallness_threshold(0.05) == doctest::Approx((16.0 / 11.0 - 0.075) / trilinear_constant()).epsilon(1e-15));
  // The c1 -> 0 limit is about 0.39; at c1 = 0.05 the threshold is about 0.37.
  CHECK(smallness_threshold(0.0) == doctest::Approx(0.3906).epsilon(1e-3));
  CHECK(smallness_threshold(0.05) == doctest::Approx(0.3705).epsilon(1e-3));
  CHECK(smallness_threshold(0.05) > 0.3);
  const auto empty = check_smallness(SpectralState(4), 0.05);
  CHECK(empty.pass);
  CHECK(empty.margin == smallness_threshold(0.05));
  const auto ok = check_smallness(delta(4, {0, 2, 1}, 0.3), 0.05);
  CHECK(ok.pass);
  CHECK(ok.margin == doctest::Approx(smallness_threshold(0.05) - 0.3));
  CHECK_FALSE(check_smallness(delta(4, {0, 2, 1}, 1.0), 0.05).pass);
  CHECK_THROWS_AS(check_smallness(SpectralState(4), 1.0), Error);
  CHECK_THROWS_AS(check_smallness(SpectralState(4), -0.01), Error);
}
