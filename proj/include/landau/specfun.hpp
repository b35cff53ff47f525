#pragma once

#include <complex>
#include <vector>

namespace landau {

/// Nodes and weights of a Gauss rule. Nodes are strictly increasing.
struct QuadratureRule
{
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/// ln Gamma(x) for x > 0; throws Error(Domain) otherwise.
double ln_gamma(double x);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x), by the three-term recurrence.
double laguerre(int n, double alpha, double x);

/// Legendre polynomial P_l(x).
double legendre(int l, double x);

/// Associated Legendre function P_l^m(x), 0 <= m <= l, without the
/// Condon-Shortley phase: (1-x^2)^{m/2} d^m/dx^m P_l(x).
double assoc_legendre(int l, int m, double x);

/// N_{l,|m|} P_l^{|m|}(x), the theta part of Y_l^m, computed with the
/// normalized recurrence (no overflow for large l).
double normalized_assoc_legendre(int l, int m, double x);

/// Orthonormal spherical harmonic Y_l^m(theta, phi) with conj(Y_l^m) = Y_l^{-m}.
/// theta is measured from the first coordinate axis, see `unit_sphere_point`.
std::complex<double> ylm(int l, int m, double theta, double phi);

/// sigma = (cos theta, sin theta cos phi, sin theta sin phi).
struct SpherePoint
{
  double theta;
  double phi;
};
SpherePoint sphere_angles(double x1, double x2, double x3);

/// Gauss-Legendre rule on [-1, 1] (Newton iteration on P_order).
QuadratureRule gauss_legendre(int order);

/// Same rule from a process-wide cache; order <= 512.
const QuadratureRule& gauss_legendre_cached(int order);

/// Generalized Gauss-Laguerre rule for the weight x^alpha e^{-x} on [0, inf).
QuadratureRule gauss_laguerre(int order, double alpha);

/// Gauss-Hermite rule for the weight e^{-x^2} on the real line.
QuadratureRule gauss_hermite(int order);

}  // namespace landau
