#include "landau/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "landau/error.hpp"

namespace landau {

namespace {

constexpr double pi = std::numbers::pi;

// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0)
{
  const int n = static_cast<int>(diag.size());
  QuadratureRule rule;
  rule.order = n;
  if (n == 1) {
    rule.nodes = {diag(0)};
    rule.weights = {mu0};
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace

double ln_gamma(double x)
{
  if (!(x > 0.0)) {
    throw Error(ErrorKind::Domain, "ln_gamma: argument must be positive, got " + std::to_string(x));
  }
  return std::lgamma(x);
}

double laguerre(int n, double alpha, double x)
{
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double legendre(int l, double x) { return assoc_legendre(l, 0, x); }

double assoc_legendre(int l, int m, double x)
{
  if (l < 0 || m < 0 || m > l) {
    throw Error(ErrorKind::Index,
                "assoc_legendre: need 0 <= m <= l, got l=" + std::to_string(l) + " m=" + std::to_string(m));
  }
  if (std::abs(x) > 1.0) {
    throw Error(ErrorKind::Domain, "assoc_legendre: |x| > 1");
  }
  // P_m^m = (2m-1)!! (1-x^2)^{m/2}, positive prefactor.
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= (2.0 * i - 1.0) * s;
  if (l == m) return pmm;
  double pm1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pm1;
  double pl = 0.0;
  for (int k = m + 2; k <= l; ++k) {
    pl = (x * (2.0 * k - 1.0) * pm1 - (k + m - 1.0) * pmm) / (k - m);
    pmm = pm1;
    pm1 = pl;
  }
  return pl;
}

double normalized_assoc_legendre(int l, int m, double x)
{
  m = std::abs(m);
  if (l < 0 || m > l) {
    throw Error(ErrorKind::Index,
                "normalized_assoc_legendre: need |m| <= l, got l=" + std::to_string(l) + " m=" + std::to_string(m));
  }
  const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  double pmm = 0.5 / std::sqrt(pi);
  for (int i = 1; i <= m; ++i) pmm *= std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * s;
  if (l == m) return pmm;
  double pm1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
  if (l == m + 1) return pm1;
  double pl = 0.0;
  for (int k = m + 2; k <= l; ++k) {
    const double kk = static_cast<double>(k) * k;
    const double mm = static_cast<double>(m) * m;
    const double a = std::sqrt((4.0 * kk - 1.0) / (kk - mm));
    const double b = std::sqrt(((k - 1.0) * (k - 1.0) - mm) / (4.0 * (k - 1.0) * (k - 1.0) - 1.0));
    pl = a * (x * pm1 - b * pmm);
    pmm = pm1;
    pm1 = pl;
  }
  return pl;
}

std::complex<double> ylm(int l, int m, double theta, double phi)
{
  if (l < 0 || std::abs(m) > l) {
    throw Error(ErrorKind::Index, "ylm: need |m| <= l, got l=" + std::to_string(l) + " m=" + std::to_string(m));
  }
  const double radial = normalized_assoc_legendre(l, m, std::cos(theta));
  return std::polar(radial, m * phi);
}

SpherePoint sphere_angles(double x1, double x2, double x3)
{
  const double r = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
  if (r == 0.0) return {0.0, 0.0};
  const double c = std::clamp(x1 / r, -1.0, 1.0);
  return {std::acos(c), std::atan2(x3, x2)};
}

QuadratureRule gauss_legendre(int order)
{
  if (order < 1) {
    throw Error(ErrorKind::Domain, "gauss_legendre: order must be >= 1");
  }
  if (order == 1) return {{0.0}, {2.0}, 1};
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 1; k < order; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

const QuadratureRule& gauss_legendre_cached(int order)
{
  constexpr int max_order = 512;
  if (order < 1 || order > max_order) {
    throw Error(ErrorKind::Capacity, "gauss_legendre_cached: order out of range: " + std::to_string(order));
  }
  static std::array<QuadratureRule, max_order + 1> rules;
  static std::array<std::once_flag, max_order + 1> flags;
  std::call_once(flags[order], [order] { rules[order] = gauss_legendre(order); });
  return rules[order];
}

QuadratureRule gauss_laguerre(int order, double alpha)
{
  if (order < 1 || !(alpha > -1.0)) {
    throw Error(ErrorKind::Domain, "gauss_laguerre: need order >= 1 and alpha > -1");
  }
  Eigen::VectorXd diag(order);
  Eigen::VectorXd off(std::max(order - 1, 0));
  for (int i = 0; i < order; ++i) diag(i) = 2.0 * i + alpha + 1.0;
  for (int i = 1; i < order; ++i) off(i - 1) = std::sqrt(i * (i + alpha));
  return golub_welsch(diag, off, std::tgamma(alpha + 1.0));
}

QuadratureRule gauss_hermite(int order)
{
  if (order < 1) {
    throw Error(ErrorKind::Domain, "gauss_hermite: order must be >= 1");
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd off(std::max(order - 1, 0));
  for (int i = 1; i < order; ++i) off(i - 1) = std::sqrt(i / 2.0);
  return golub_welsch(diag, off, std::sqrt(pi));
}

}  // namespace landau
