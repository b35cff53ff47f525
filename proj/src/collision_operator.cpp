#include "landau/collision_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "landau/error.hpp"
#include "landau/specfun.hpp"

namespace landau {

namespace {

constexpr double pi = std::numbers::pi;

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

void require_same_truncation(const SpectralState& a, const SpectralState& b, const char* what)
{
  if (a.truncation() != b.truncation()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": truncations differ (" +
                                                  std::to_string(a.truncation()) + " vs " +
                                                  std::to_string(b.truncation()) + ")");
  }
}

}  // namespace

SpectralState apply_linear(const SpectralState& state)
{
  SpectralState out = state;
  const auto& modes = out.modes();
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= lambda_eig(modes[i].n, modes[i].l);
  return out;
}

SpectralState apply_bilinear(const SpectralState& f, const SpectralState& g, const CouplingTensor& tensor)
{
  require_same_truncation(f, g, "apply_bilinear");
  if (f.truncation() != tensor.truncation()) {
    throw Error(ErrorKind::DimensionMismatch, "apply_bilinear: state truncation " + std::to_string(f.truncation()) +
                                                  " does not match tensor truncation " +
                                                  std::to_string(tensor.truncation()));
  }
  SpectralState h(f.truncation(), g.time());
  const auto fc = f.coeffs();
  const auto gc = g.coeffs();
  auto hc = h.coeffs();
  for (const auto& e : tensor.entries()) {
    hc[e.target_index] += e.coef * fc[e.driver_index] * gc[e.source_index];
  }
  return h;
}

SpectralState apply_shubin_power(const SpectralState& state, double power)
{
  SpectralState out = state;
  const auto& modes = out.modes();
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::pow(shubin_weight(modes[i]), power);
  return out;
}

cplx inner_product(const SpectralState& a, const SpectralState& b)
{
  require_same_truncation(a, b, "inner_product");
  cplx sum{0.0, 0.0};
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  for (std::size_t i = 0; i < ac.size(); ++i) sum += ac[i] * std::conj(bc[i]);
  return sum;
}

TrilinearSample trilinear_sample(const SpectralState& f, const SpectralState& g, const SpectralState& h, double alpha,
                                 const CouplingTensor& tensor)
{
  const int N = tensor.truncation();
  const SpectralState ft = project_tilde(f, N);
  const SpectralState gt = project_tilde(g, N);
  const SpectralState ht = project_tilde(h, N);
  const SpectralState image = apply_bilinear(ft, gt, tensor);
  TrilinearSample out;
  out.lhs = std::abs(inner_product(image, apply_shubin_power(ht, alpha)));
  out.rhs = (4.0 * std::sqrt(3.0) / 3.0 + std::sqrt(2.0)) * s2_norm(ft) *
            weighted_norm(project_tilde(g, N - 2), {alpha + 1.0, 0.0, 0.0}) * weighted_norm(ht, {alpha + 1.0, 0.0, 0.0});
  return out;
}

double fourier_multiplier_oracle(const ModeIndex& driver, const ModeIndex& target, std::span<const Vec3> xi_samples)
{
  const bool drift = driver == ModeIndex{1, 0, 0};
  const bool quadrupole = driver.n == 0 && driver.l == 2 && driver.valid();
  if (!drift && !quadrupole) {
    throw Error(ErrorKind::Domain, "fourier_multiplier_oracle: driver must be (1,0,0) or (0,2,m2)");
  }
  if (!target.valid()) {
    throw Error(ErrorKind::Index, "fourier_multiplier_oracle: invalid target mode");
  }
  const int n = target.n;
  const int l = target.l;
  const int m = target.m;
  double worst = 0.0;
  for (const Vec3& xi : xi_samples) {
    const double r = norm3(xi);
    if (r < 1e-8) {
      throw Error(ErrorKind::DegenerateSample, "fourier_multiplier_oracle: |xi| < 1e-8");
    }
    cplx left;
    cplx right{0.0, 0.0};
    double scale = 0.0;
    auto add = [&](double coef, const ModeIndex& mode) {
      if (coef == 0.0 || !mode.valid()) return;
      const cplx term = coef * psi_hat(mode, xi);
      right += term;
      scale += std::abs(term);
    };
    if (drift) {
      left = (2.0 * std::sqrt(6.0) / 3.0) * r * r * psi_hat(target, xi);
      add(drift_coefficient(n, l), {n + 1, l, m});
    } else {
      const int m2 = driver.m;
      const SpherePoint s = sphere_angles(xi[0], xi[1], xi[2]);
      left = 4.0 * std::sqrt(pi / 15.0) * r * r * ylm(2, m2, s.theta, s.phi) * psi_hat(target, xi);
      add(A1(n, l, m, m2), {n + 2, l - 2, m + m2});
      add(A2(n, l, m, m2), {n + 1, l, m + m2});
      add(A3(n, l, m, m2), {n, l + 2, m + m2});
    }
    scale += std::abs(left);
    if (scale > 0.0) worst = std::max(worst, std::abs(left - right) / scale);
  }
  return worst;
}

namespace {

// int (v.w)^p Psi(w) dw with Psi = sqrt(mu) phi_mode, in x = |w|^2/2 (weight x^{1/2} e^{-x})
// times Gauss-Legendre in cos(theta) times the trapezoid rule in phi.
cplx moment_quadrature(const ModeIndex& mode, int power, const Vec3& v, int order)
{
  const QuadratureRule radial = gauss_laguerre(order, 0.5);
  const QuadratureRule& polar = gauss_legendre_cached(order);
  const int n_phi = 2 * order;
  cplx sum{0.0, 0.0};
  for (int i = 0; i < radial.order; ++i) {
    const double x = radial.nodes[i];
    const double r = std::sqrt(2.0 * x);
    for (int j = 0; j < polar.order; ++j) {
      const double c = polar.nodes[j];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      cplx ring{0.0, 0.0};
      for (int k = 0; k < n_phi; ++k) {
        const double ph = 2.0 * pi * k / n_phi;
        const Vec3 w{r * c, r * s * std::cos(ph), r * s * std::sin(ph)};
        const double dot = v[0] * w[0] + v[1] * w[1] + v[2] * w[2];
        // Psi carries e^{-x}, which the Laguerre weight already supplies.
        const cplx psi = phi_eval(mode, w) * sqrt_maxwellian(w) * std::exp(x);
        ring += std::pow(dot, power) * psi;
      }
      sum += radial.weights[i] * polar.weights[j] * (2.0 * pi / n_phi) * ring;
    }
  }
  return std::sqrt(2.0) * sum;
}

}  // namespace

double moment_integral_oracle(MomentIntegral which, std::span<const Vec3> v_samples, int order, double tol)
{
  if (order < 1) {
    throw Error(ErrorKind::QuadratureOrder, "moment_integral_oracle: order must be >= 1");
  }
  std::vector<ModeIndex> modes;
  int power = 2;
  switch (which) {
    case MomentIntegral::Orth1:
      power = 1;
      for (int m = -1; m <= 1; ++m) modes.push_back({0, 1, m});
      break;
    case MomentIntegral::Orth2:
      for (int m = -2; m <= 2; ++m) modes.push_back({0, 2, m});
      break;
    case MomentIntegral::Orth3: modes.push_back({1, 0, 0}); break;
  }
  double worst = 0.0;
  for (const Vec3& v : v_samples) {
    const double r = norm3(v);
    if (r == 0.0) {
      throw Error(ErrorKind::DegenerateSample, "moment_integral_oracle: v must be nonzero");
    }
    const SpherePoint s = sphere_angles(v[0], v[1], v[2]);
    const double scale = std::pow(r, power);
    for (const ModeIndex& mode : modes) {
      cplx exact;
      switch (which) {
        case MomentIntegral::Orth1: exact = std::sqrt(4.0 * pi / 3.0) * r * ylm(1, mode.m, s.theta, s.phi); break;
        case MomentIntegral::Orth2:
          exact = std::sqrt(16.0 * pi / 15.0) * r * r * ylm(2, mode.m, s.theta, s.phi);
          break;
        case MomentIntegral::Orth3: exact = -std::sqrt(6.0) / 3.0 * r * r; break;
      }
      const cplx coarse = moment_quadrature(mode, power, v, order);
      const cplx fine = moment_quadrature(mode, power, v, 2 * order);
      if (std::abs(coarse - fine) / scale > tol) {
        throw Error(ErrorKind::QuadratureOrder,
                    "moment_integral_oracle: order " + std::to_string(order) + " does not reach tolerance");
      }
      worst = std::max(worst, std::abs(fine - exact) / scale);
    }
  }
  return worst;
}

}  // namespace landau
