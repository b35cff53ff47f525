#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "landau/basis.hpp"
#include "landau/error.hpp"
#include "landau/specfun.hpp"
#include "landau/state_io.hpp"

using namespace landau;

namespace {

constexpr double pi = std::numbers::pi;

struct Node
{
  Vec3 v;
  double w;
};

// Product rule for int F(v) e^{-|v|^2/2} dv: Gauss-Laguerre (alpha = 1/2) in x = |v|^2/2,
// Gauss-Legendre in cos(theta), trapezoid in phi. Returns nodes with the e^{-x} factor removed.
std::vector<Node> gaussian_sphere_rule(int radial_order, int polar_order, int n_phi)
{
  const auto radial = gauss_laguerre(radial_order, 0.5);
  const auto polar = gauss_legendre(polar_order);
  std::vector<Node> nodes;
  for (int i = 0; i < radial.order; ++i) {
    const double r = std::sqrt(2.0 * radial.nodes[i]);
    for (int j = 0; j < polar.order; ++j) {
      const double c = polar.nodes[j];
      const double s = std::sqrt(1.0 - c * c);
      for (int k = 0; k < n_phi; ++k) {
        const double ph = 2.0 * pi * k / n_phi;
        nodes.push_back({{r * c, r * s * std::cos(ph), r * s * std::sin(ph)},
                         std::sqrt(2.0) * radial.weights[i] * polar.weights[j] * 2.0 * pi / n_phi});
      }
    }
  }
  return nodes;
}

}  // namespace

TEST_CASE("mode enumeration order and counts")
{
  for (int k = 0; k <= 20; ++k) {
    std::size_t direct = 0;
    for (int n = 0; n <= k; ++n) {
      for (int l = 0; l <= k; ++l) {
        if (2 * n + l == k) direct += 2 * l + 1;
      }
    }
    CHECK(shell_size(k) == direct);
    // Closed forms for even and odd shells.
    const std::size_t closed = k % 2 == 0 ? (k / 2 + 1) * (k + 1) : (k + 1) * (k + 2) / 2;
    CHECK(shell_size(k) == closed);
  }
  const auto table = mode_table(12);
  REQUIRE(table->size() == mode_count(12));
  for (std::size_t i = 0; i < table->size(); ++i) {
    const auto& m = (*table)[i];
    CHECK(m.valid());
    CHECK(mode_offset(m) == i);
    if (i > 0) {
      const auto& p = (*table)[i - 1];
      const bool ordered = p.shell() < m.shell() || (p.shell() == m.shell() && p.n < m.n) ||
                           (p.shell() == m.shell() && p.n == m.n && p.m < m.m);
      CHECK(ordered);
    }
  }
  // Offsets do not depend on the truncation.
  const auto small = mode_table(5);
  for (std::size_t i = 0; i < small->size(); ++i) CHECK((*small)[i] == (*table)[i]);
}

TEST_CASE("lambda table")
{
  CHECK(lambda_eig(0, 0) == 0.0);
  CHECK(lambda_eig(0, 1) == 0.0);
  CHECK(lambda_eig(1, 0) == 0.0);
  CHECK(lambda_eig(0, 2) == 12.0);
  CHECK(lambda_eig(1, 2) == 14.0);
  CHECK(lambda_eig(0, 3) == 18.0);
}

TEST_CASE("phi_eval closed forms")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int i = 0; i < 20; ++i) {
    const Vec3 v{u(rng), u(rng), u(rng)};
    const double sm = sqrt_maxwellian(v);
    CHECK(std::abs(phi_eval({0, 1, 0}, v) - v[0] * sm) < 1e-14);
    CHECK(std::abs(phi_eval({0, 0, 0}, v) - sm) < 1e-14);
    // (|v|^2 - 3)/sqrt(6) sqrt(mu), the energy invariant, up to the sign fixed by L_1 = 3/2 - x.
    const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    CHECK(std::abs(phi_eval({1, 0, 0}, v) - (3.0 - r2) / std::sqrt(6.0) * sm) < 1e-14);
  }
  CHECK(phi_eval({0, 0, 0}, {0.0, 0.0, 0.0}).real() == doctest::Approx(std::pow(2.0 * pi, -0.75)).epsilon(1e-15));
  CHECK(phi_eval({0, 2, 1}, {0.0, 0.0, 0.0}) == cplx{0.0, 0.0});
}

TEST_CASE("numerical orthonormality up to shell 6")
{
  const auto nodes = gaussian_sphere_rule(10, 16, 32);
  const auto table = mode_table(6);
  const std::size_t nm = table->size();
  std::vector<std::vector<cplx>> values(nm, std::vector<cplx>(nodes.size()));
  for (std::size_t a = 0; a < nm; ++a) {
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const Vec3& v = nodes[q].v;
      const double x = 0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      // phi carries e^{-x/2}; the product of two carries e^{-x}, supplied by the rule.
      values[a][q] = phi_eval((*table)[a], v) * std::exp(0.5 * x);
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < nm; ++a) {
    for (std::size_t b = a; b < nm; ++b) {
      cplx s{0.0, 0.0};
      for (std::size_t q = 0; q < nodes.size(); ++q) s += nodes[q].w * values[a][q] * std::conj(values[b][q]);
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("psi_hat examples")
{
  CHECK(std::abs(psi_hat({0, 0, 0}, {0.0, 0.0, 0.0}) - 1.0) < 1e-15);
  const cplx b01 = psi_hat_prefactor(0, 1);
  CHECK(std::abs(b01.real()) < 1e-15);
  CHECK(b01.imag() < 0.0);
  // psi_hat(0,1,0) = -i xi_1 e^{-|xi|^2/2}.
  const Vec3 xi{0.7, -0.4, 1.1};
  const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  CHECK(std::abs(psi_hat({0, 1, 0}, xi) - cplx{0.0, -xi[0] * std::exp(-0.5 * r2)}) < 1e-14);
  CHECK(std::abs(psi_hat({2, 3, -1}, {30.0, 0.0, 0.0})) < 1e-150);
}

TEST_CASE("psi_hat against direct Fourier quadrature")
{
  // int e^{-i v.xi} sqrt(mu) phi dv; with v = sqrt(2) u the Gaussian becomes e^{-|u|^2}.
  const auto gh = gauss_hermite(40);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(0.0, 3.0);
  std::vector<Vec3> xis;
  for (int i = 0; i < 10; ++i) {
    Vec3 d{normal(rng), normal(rng), normal(rng)};
    const double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    const double r = radius(rng);
    xis.push_back({r * d[0] / len, r * d[1] / len, r * d[2] / len});
  }
  const auto table = mode_table(4);
  double worst = 0.0;
  for (const auto& mode : *table) {
    std::vector<cplx> f(gh.order * gh.order * gh.order);
    std::size_t idx = 0;
    for (int i = 0; i < gh.order; ++i) {
      for (int j = 0; j < gh.order; ++j) {
        for (int k = 0; k < gh.order; ++k) {
          const Vec3 v{std::sqrt(2.0) * gh.nodes[i], std::sqrt(2.0) * gh.nodes[j], std::sqrt(2.0) * gh.nodes[k]};
          const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
          f[idx++] = gh.weights[i] * gh.weights[j] * gh.weights[k] * 2.0 * std::sqrt(2.0) * phi_eval(mode, v) *
                     sqrt_maxwellian(v) * std::exp(0.5 * r2);
        }
      }
    }
    for (const auto& xi : xis) {
      cplx s{0.0, 0.0};
      idx = 0;
      for (int i = 0; i < gh.order; ++i) {
        for (int j = 0; j < gh.order; ++j) {
          for (int k = 0; k < gh.order; ++k) {
            const double phase =
                std::sqrt(2.0) * (gh.nodes[i] * xi[0] + gh.nodes[j] * xi[1] + gh.nodes[k] * xi[2]);
            s += f[idx++] * std::polar(1.0, -phase);
          }
        }
      }
      worst = std::max(worst, std::abs(s - psi_hat(mode, xi)));
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("state storage")
{
  SpectralState s(4);
  CHECK(s.size() == mode_count(4));
  CHECK(s.get({3, 0, 0}) == cplx{0.0, 0.0});
  CHECK(s.get({-1, 2, 0}) == cplx{0.0, 0.0});
  CHECK_THROWS_AS(s.set({3, 0, 0}, 1.0), Error);
  CHECK_THROWS_AS(s.set({0, 2, 3}, 1.0), Error);
  s.set({0, 2, 1}, {0.3, 0.4});
  CHECK(s.get({0, 2, 1}) == cplx{0.3, 0.4});
  CHECK_FALSE(s.has_reality_symmetry(1e-15));
  s.set({0, 2, -1}, {0.3, -0.4});
  CHECK(s.has_reality_symmetry(0.0));
}

TEST_CASE("project_tilde")
{
  SpectralState s(6);
  s.set({1, 0, 0}, 1.0);
  SpectralState p = project_tilde(s, 6);
  for (auto c : p.coeffs()) CHECK(c == cplx{0.0, 0.0});

  SpectralState z(6);
  z.set({0, 2, 1}, {0.2, -0.1});
  z.set({0, 2, -1}, {0.2, 0.1});
  p = project_tilde(z, 6);
  CHECK(p.get({0, 2, 1}) == cplx{0.2, -0.1});
  CHECK(p.has_reality_symmetry(0.0));

  SpectralState w(6);
  w.set({0, 3, 0}, 1.0);
  p = project_tilde(w, 2);
  CHECK(p.truncation() == 2);
  for (auto c : p.coeffs()) CHECK(c == cplx{0.0, 0.0});

  for (const ModeIndex m : {ModeIndex{0, 0, 0}, ModeIndex{0, 1, -1}, ModeIndex{0, 1, 0}, ModeIndex{0, 1, 1}}) {
    SpectralState q(6);
    q.set(m, 2.0);
    CHECK(nullspace_residual(project_tilde(q, 6)) == 0.0);
  }
  CHECK_THROWS_AS(project_tilde(w, 7), Error);
}

TEST_CASE("weighted norms")
{
  SpectralState s(4);
  CHECK(weighted_norm(s, {0.0, 0.0, 0.0}) == 0.0);
  s.set({0, 2, 0}, 1.0);
  CHECK(weighted_norm(s, {0.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(weighted_norm(s, {-2.0, 0.0, 0.0}) == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
  CHECK(weighted_norm(s, {0.0, 0.1, 2.0}) == doctest::Approx(std::exp(0.1 * 2.0 * 3.5)).epsilon(1e-14));

  // Norm depends only on |g|.
  SpectralState a(4);
  SpectralState b(4);
  a.set({1, 2, -1}, {0.3, 0.4});
  b.set({1, 2, -1}, {-0.5, 0.0});
  CHECK(weighted_norm(a, {-1.3, 0.2, 1.0}) == doctest::Approx(weighted_norm(b, {-1.3, 0.2, 1.0})).epsilon(1e-15));

  // Large weights stay finite when the result is representable.
  CHECK(std::isfinite(weighted_norm(s, {0.0, 1.0, 150.0})));
  bool threw = false;
  try {
    weighted_norm(s, {0.0, 1.0, 250.0});
  } catch (const Error& e) {
    threw = true;
    CHECK(e.kind() == ErrorKind::Overflow);
    CHECK(std::string(e.what()).find("shell 2") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("s2 and null-space norms")
{
  SpectralState s(4);
  CHECK(s2_norm(s) == 0.0);
  s.set({0, 2, 0}, 0.3);
  CHECK(s2_norm(s) == doctest::Approx(0.3));
  SpectralState t(4);
  t.set({0, 2, 1}, 0.3);
  t.set({0, 2, -1}, 0.3);
  CHECK(s2_norm(t) == doctest::Approx(0.3 * std::sqrt(2.0)).epsilon(1e-15));
  t.set({1, 0, 0}, 0.5);
  t.set({0, 1, 1}, {0.0, 1.2});
  CHECK(nullspace_residual(t) == doctest::Approx(1.3).epsilon(1e-15));
}

TEST_CASE("coefficient CSV round trip is bit exact")
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpectralState s(6);
  for (auto& c : s.coeffs()) c = {u(rng) * 1e-7, u(rng) * 3.0};
  std::stringstream buf;
  write_state_csv(s, buf);
  const SpectralState r = read_state_csv(buf, 6);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(r.coeffs()[i].real() == s.coeffs()[i].real());
    CHECK(r.coeffs()[i].imag() == s.coeffs()[i].imag());
  }
}

TEST_CASE("coefficient CSV validation")
{
  {
    std::istringstream in("n,l,m,re,im\n0,2,0,1.0,0.0\n");
    const SpectralState s = read_state_csv(in, 4);
    CHECK(s.get({0, 2, 0}) == cplx{1.0, 0.0});
  }
  {
    std::istringstream in("n,l,m,re,im\n0,2,3,1.0,0.0\n3,0,0,1,0\n");
    try {
      read_state_csv(in, 4);
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Invariant);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  {
    std::istringstream in("n,l,m,re,im\n0,2,0,abc,0.0\n");
    try {
      read_state_csv(in, 4);
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}
