#include "landau/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "landau/collision_operator.hpp"
#include "landau/error.hpp"

namespace landau {

namespace {

std::vector<cplx> poly_derivative(const std::vector<cplx>& p)
{
  if (p.size() <= 1) return {};
  std::vector<cplx> d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

std::vector<cplx> poly_integral(const std::vector<cplx>& p)
{
  std::vector<cplx> q(p.size() + 1, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < p.size(); ++k) q[k + 1] = p[k] / static_cast<double>(k + 1);
  return q;
}

cplx poly_eval(const std::vector<cplx>& p, double t)
{
  cplx acc{0.0, 0.0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

void poly_add(std::vector<cplx>& into, const std::vector<cplx>& p, cplx scale)
{
  if (into.size() < p.size()) into.resize(p.size(), cplx{0.0, 0.0});
  for (std::size_t k = 0; k < p.size(); ++k) into[k] += scale * p[k];
}

}  // namespace

void ExpPoly::add(const ExpPolyTerm& term)
{
  if (term.poly.empty()) return;
  for (auto& existing : terms_) {
    if (std::abs(existing.rate - term.rate) < kRateMergeTol) {
      poly_add(existing.poly, term.poly, 1.0);
      return;
    }
  }
  terms_.push_back(term);
}

void ExpPoly::add(const ExpPoly& other, cplx scale, double extra_rate)
{
  for (const auto& term : other.terms_) {
    ExpPolyTerm t{term.rate + extra_rate, {}};
    poly_add(t.poly, term.poly, scale);
    add(t);
  }
}

cplx ExpPoly::operator()(double t) const
{
  cplx sum{0.0, 0.0};
  for (const auto& term : terms_) sum += poly_eval(term.poly, t) * std::exp(-term.rate * t);
  return sum;
}

ExpPoly solve_forced_mode(double lambda, cplx g0, const ExpPoly& forcing)
{
  ExpPoly out;
  cplx homogeneous = g0;
  for (const auto& term : forcing.terms()) {
    const double d = lambda - term.rate;
    std::vector<cplx> q;
    if (std::abs(d) < ExpPoly::kRateMergeTol) {
      // Resonant: Q' = P, Q(0) = 0.
      q = poly_integral(term.poly);
      out.add({lambda, q});
      continue;
    }
    // Q' + d Q = P has the polynomial solution sum_k (-1)^k P^{(k)} / d^{k+1}.
    std::vector<cplx> deriv = term.poly;
    double sign = 1.0;
    double dpow = d;
    while (!deriv.empty()) {
      poly_add(q, deriv, sign / dpow);
      deriv = poly_derivative(deriv);
      sign = -sign;
      dpow *= d;
    }
    homogeneous -= q.empty() ? cplx{0.0, 0.0} : q[0];
    out.add({term.rate, q});
  }
  out.add({lambda, {homogeneous}});
  return out;
}

ExpPolyTrajectory::ExpPolyTrajectory(int truncation)
    : truncation_(truncation)
    , modes_(mode_count(truncation))
{
}

const ExpPoly& ExpPolyTrajectory::mode(const ModeIndex& m) const
{
  static const ExpPoly zero;
  if (!m.valid() || m.shell() > truncation_) return zero;
  return modes_[mode_offset(m)];
}

ExpPoly& ExpPolyTrajectory::mode_mut(const ModeIndex& m)
{
  if (!m.valid() || m.shell() > truncation_) {
    throw Error(ErrorKind::Index, "ExpPolyTrajectory: mode outside truncation");
  }
  return modes_[mode_offset(m)];
}

SpectralState ExpPolyTrajectory::at(double t) const
{
  SpectralState s(truncation_, t);
  auto c = s.coeffs();
  for (std::size_t i = 0; i < modes_.size(); ++i) c[i] = modes_[i](t);
  return s;
}

ExpPolyTrajectory solve_cascade(const SpectralState& init, const CouplingTensor& tensor)
{
  if (init.truncation() != tensor.truncation()) {
    throw Error(ErrorKind::DimensionMismatch, "solve_cascade: state truncation " + std::to_string(init.truncation()) +
                                                  " does not match tensor truncation " +
                                                  std::to_string(tensor.truncation()));
  }
  const double residual = nullspace_residual(init);
  if (residual > 1e-12) {
    throw Error(ErrorKind::Precondition,
                "solve_cascade: initial datum must be orthogonal to the null space (residual " +
                    std::to_string(residual) + ")");
  }
  const int N = init.truncation();
  ExpPolyTrajectory traj(N);
  for (int m = -2; m <= 2; ++m) {
    const cplx g0 = init.get({0, 2, m});
    if (g0 != cplx{0.0, 0.0}) traj.mode_mut({0, 2, m}).add({12.0, {g0}});
  }
  for (int k = 3; k <= N; ++k) {
    // Modes within a shell are independent; the previous shell is read only.
#pragma omp parallel for schedule(dynamic)
    for (int n = 0; n <= k / 2; ++n) {
      const int l = k - 2 * n;
      for (int m = -l; m <= l; ++m) {
        const ModeIndex target{n, l, m};
        ExpPoly forcing;
        for (const auto& e : tensor.row(target)) {
          if (e.channel != Channel::A1 && e.channel != Channel::A2 && e.channel != Channel::A3) continue;
          const cplx driver = init.get({0, 2, e.driver_m});
          if (driver == cplx{0.0, 0.0}) continue;
          forcing.add(traj.mode(e.source), e.coef * driver, 12.0);
        }
        const cplx g0 = init.get(target);
        if (forcing.empty() && g0 == cplx{0.0, 0.0}) continue;
        traj.mode_mut(target) = solve_forced_mode(lambda_eig(n, l), g0, forcing);
      }
    }
  }
  return traj;
}

std::string_view to_string(Method method)
{
  switch (method) {
    case Method::Cascade: return "cascade";
    case Method::EtdRk4: return "etd-rk4";
    case Method::Rk4: return "rk4";
  }
  return "?";
}

Method method_from_string(std::string_view name)
{
  for (Method m : {Method::Cascade, Method::EtdRk4, Method::Rk4}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorKind::Config, "unknown integrator method '" + std::string(name) + "'");
}

void IntegratorConfig::validate() const
{
  if (!(dt > 0.0) || !(t_final > 0.0)) throw Error(ErrorKind::Config, "dt and t_final must be positive");
  if (dt > t_final) throw Error(ErrorKind::Config, "dt must not exceed t_final");
  if (!(c1 >= 0.0) || !(c1 < 16.0 / 11.0)) throw Error(ErrorKind::Config, "c1 must lie in [0, 16/11)");
  if (!(alpha <= 0.0)) throw Error(ErrorKind::Config, "alpha must be <= 0");
}

namespace {

using Vec = std::vector<cplx>;

// phi_k(z) = sum_j z^j / (j + k)!, via the series near 0 and closed forms elsewhere.
struct PhiValues
{
  double phi1, phi2, phi3;
};

PhiValues phi_functions(double z)
{
  if (std::abs(z) < 1.0) {
    PhiValues p{0.0, 0.0, 0.0};
    double term1 = 1.0;  // z^j / (j+1)!
    double term2 = 0.5;  // z^j / (j+2)!
    double term3 = 1.0 / 6.0;
    for (int j = 0; j < 30; ++j) {
      p.phi1 += term1;
      p.phi2 += term2;
      p.phi3 += term3;
      term1 *= z / (j + 2.0);
      term2 *= z / (j + 3.0);
      term3 *= z / (j + 4.0);
    }
    return p;
  }
  const double ez = std::exp(z);
  const double phi1 = (ez - 1.0) / z;
  const double phi2 = (phi1 - 1.0) / z;
  const double phi3 = (phi2 - 0.5) / z;
  return {phi1, phi2, phi3};
}

class Rhs
{
 public:
  Rhs(const CouplingTensor& tensor, std::size_t size)
      : tensor_(tensor)
      , size_(size)
  {
  }

  // Quadratic part L(u, u).
  void bilinear(const Vec& u, Vec& out) const
  {
    out.assign(size_, cplx{0.0, 0.0});
    for (const auto& e : tensor_.entries()) out[e.target_index] += e.coef * u[e.driver_index] * u[e.source_index];
  }

 private:
  const CouplingTensor& tensor_;
  std::size_t size_;
};

void check_finite(const Vec& u, const std::vector<ModeIndex>& modes, double t)
{
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i].real()) || !std::isfinite(u[i].imag())) {
      const auto& m = modes[i];
      throw Error(ErrorKind::NonFinite, "integrate_numeric: non-finite amplitude at mode (" + std::to_string(m.n) +
                                            "," + std::to_string(m.l) + "," + std::to_string(m.m) +
                                            ") at t=" + std::to_string(t));
    }
  }
}

}  // namespace

std::vector<SpectralState> integrate_numeric(const SpectralState& init, const CouplingTensor& tensor,
                                             const IntegratorConfig& cfg)
{
  cfg.validate();
  if (init.truncation() != tensor.truncation()) {
    throw Error(ErrorKind::DimensionMismatch, "integrate_numeric: state truncation " +
                                                  std::to_string(init.truncation()) +
                                                  " does not match tensor truncation " +
                                                  std::to_string(tensor.truncation()));
  }
  const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-9)));
  const double h = cfg.t_final / static_cast<double>(steps);

  std::vector<SpectralState> series;
  if (cfg.method == Method::Cascade) {
    const ExpPolyTrajectory traj = solve_cascade(init, tensor);
    series.reserve(steps + 1);
    for (long s = 0; s <= steps; ++s) series.push_back(traj.at(init.time() + s * h));
    return series;
  }

  const auto& modes = init.modes();
  const std::size_t size = init.size();
  std::vector<double> lambda(size);
  double lambda_max = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    lambda[i] = lambda_eig(modes[i].n, modes[i].l);
    lambda_max = std::max(lambda_max, lambda[i]);
  }
  if (cfg.method == Method::Rk4 && h * lambda_max > kRk4StabilityBound) {
    throw Error(ErrorKind::StepSize, "integrate_numeric: rk4 needs dt * max(lambda) <= " +
                                         std::to_string(kRk4StabilityBound) + ", got " +
                                         std::to_string(h * lambda_max));
  }

  const Rhs rhs(tensor, size);
  Vec u(init.coeffs().begin(), init.coeffs().end());
  Vec nu, na, nb, nc, a(size), b(size), c(size), k1, k2, k3, k4, tmp(size);

  // Exponential factors for the stiff diagonal.
  std::vector<double> e_full(size), e_half(size), q_half(size), f1(size), f2(size), f3(size);
  if (cfg.method == Method::EtdRk4) {
    for (std::size_t i = 0; i < size; ++i) {
      const double z = -lambda[i] * h;
      const PhiValues full = phi_functions(z);
      const PhiValues half = phi_functions(0.5 * z);
      e_full[i] = std::exp(z);
      e_half[i] = std::exp(0.5 * z);
      q_half[i] = 0.5 * h * half.phi1;
      f1[i] = h * (full.phi1 - 3.0 * full.phi2 + 4.0 * full.phi3);
      f2[i] = h * (full.phi2 - 2.0 * full.phi3);
      f3[i] = h * (-full.phi2 + 4.0 * full.phi3);
    }
  }

  series.reserve(steps + 1);
  series.push_back(init);
  const double t0 = init.time();
  for (long s = 1; s <= steps; ++s) {
    if (cfg.method == Method::EtdRk4) {
      rhs.bilinear(u, nu);
      for (std::size_t i = 0; i < size; ++i) a[i] = e_half[i] * u[i] + q_half[i] * nu[i];
      rhs.bilinear(a, na);
      for (std::size_t i = 0; i < size; ++i) b[i] = e_half[i] * u[i] + q_half[i] * na[i];
      rhs.bilinear(b, nb);
      for (std::size_t i = 0; i < size; ++i) c[i] = e_half[i] * a[i] + q_half[i] * (2.0 * nb[i] - nu[i]);
      rhs.bilinear(c, nc);
      for (std::size_t i = 0; i < size; ++i) {
        u[i] = e_full[i] * u[i] + f1[i] * nu[i] + 2.0 * f2[i] * (na[i] + nb[i]) + f3[i] * nc[i];
      }
    } else {
      auto eval = [&](const Vec& x, Vec& out) {
        rhs.bilinear(x, out);
        for (std::size_t i = 0; i < size; ++i) out[i] -= lambda[i] * x[i];
      };
      eval(u, k1);
      for (std::size_t i = 0; i < size; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
      eval(tmp, k2);
      for (std::size_t i = 0; i < size; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
      eval(tmp, k3);
      for (std::size_t i = 0; i < size; ++i) tmp[i] = u[i] + h * k3[i];
      eval(tmp, k4);
      for (std::size_t i = 0; i < size; ++i) u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    const double t = t0 + s * h;
    check_finite(u, modes, t);
    SpectralState state(init.truncation(), t);
    std::copy(u.begin(), u.end(), state.coeffs().begin());
    series.push_back(std::move(state));
  }
  return series;
}

std::vector<DiagnosticsRow> diagnostics(const std::vector<SpectralState>& series, double alpha, double c1)
{
  std::vector<DiagnosticsRow> rows;
  rows.reserve(series.size());
  double integral = 0.0;
  double prev_t = 0.0;
  double prev_density = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const SpectralState& g = series[i];
    const double t = g.time();
    DiagnosticsRow row;
    row.t = t;
    row.q_alpha_norm = weighted_norm(g, {alpha, 0.0, t});
    row.gs_norm = weighted_norm(g, {alpha, c1, t});
    row.s2_norm = s2_norm(g);
    row.nullspace_residual = nullspace_residual(g);
    const double q1 = weighted_norm(g, {alpha + 1.0, c1, t});
    const double density = c1 * q1 * q1;
    if (i > 0) integral += 0.5 * (t - prev_t) * (density + prev_density);
    row.energy_integral = integral;
    prev_t = t;
    prev_density = density;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SpectralState> sample_trajectory(const ExpPolyTrajectory& traj, const std::vector<double>& times)
{
  std::vector<SpectralState> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(traj.at(t));
  return out;
}

double trilinear_constant() { return 4.0 * std::sqrt(3.0) / 3.0 + std::sqrt(2.0); }

double smallness_threshold(double c1) { return (16.0 / 11.0 - 1.5 * c1) / trilinear_constant(); }

SmallnessCheck check_smallness(const SpectralState& init, double c1)
{
  if (!(c1 >= 0.0) || !(c1 < 32.0 / 33.0)) {
    throw Error(ErrorKind::Domain, "check_smallness: c1 must lie in [0, 32/33)");
  }
  SmallnessCheck out;
  out.c0 = smallness_threshold(c1);
  out.s2 = s2_norm(init);
  out.margin = out.c0 - out.s2;
  out.pass = out.s2 <= out.c0;
  return out;
}

}  // namespace landau
