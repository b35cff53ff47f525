#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace landau {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Label (n, l, m) of an eigenmode; |m| <= l. Shell is 2n + l.
struct ModeIndex
{
  int n = 0;
  int l = 0;
  int m = 0;

  constexpr int shell() const { return 2 * n + l; }
  constexpr bool valid() const { return n >= 0 && l >= 0 && m >= -l && m <= l; }
  friend constexpr bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

/// Number of modes with 2n + l == k.
std::size_t shell_size(int k);

/// Number of modes with 2n + l <= N.
std::size_t mode_count(int N);

/// Position of a mode in the canonical order: shell ascending, then n
/// ascending, then m ascending. Independent of the truncation.
std::size_t mode_offset(const ModeIndex& mode);

/// Modes with shell <= N in canonical order (shared, immutable).
std::shared_ptr<const std::vector<ModeIndex>> mode_table(int N);

/// The five collision invariants: (0,0,0), (0,1,-1), (0,1,0), (0,1,1), (1,0,0).
bool is_nullspace_mode(const ModeIndex& mode);

/// Truncated coefficient vector g_{n,l,m} for all modes with 2n + l <= N.
/// Modes outside the table read as zero.
class SpectralState
{
 public:
  SpectralState() = default;
  explicit SpectralState(int truncation, double t = 0.0);

  int truncation() const { return truncation_; }
  double time() const { return t_; }
  void set_time(double t) { t_ = t; }

  std::size_t size() const { return coeffs_.size(); }
  const std::vector<ModeIndex>& modes() const { return *modes_; }

  cplx get(const ModeIndex& mode) const;
  void set(const ModeIndex& mode, cplx value);

  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  /// g_{n,l,-m} == conj(g_{n,l,m}) for every stored mode, within tol.
  bool has_reality_symmetry(double tol = 0.0) const;

 private:
  int truncation_ = 0;
  double t_ = 0.0;
  std::shared_ptr<const std::vector<ModeIndex>> modes_;
  std::vector<cplx> coeffs_;
};

/// Shubin index alpha, Gelfand-Shilov rate c1 and time t of a weighted norm.
struct NormSpec
{
  double alpha = 0.0;
  double c1 = 0.0;
  double t = 0.0;
};

/// Eigenvalue of the linearized operator.
double lambda_eig(int n, int l);

/// Harmonic oscillator eigenvalue 2n + l + 3/2.
inline double shubin_weight(const ModeIndex& mode) { return mode.shell() + 1.5; }

/// Eigenfunction phi_{n,l,m}(v).
cplx phi_eval(const ModeIndex& mode, const Vec3& v);

/// sqrt(mu(v)) = (2 pi)^{-3/4} e^{-|v|^2/4}.
double sqrt_maxwellian(const Vec3& v);

/// Fourier transform of sqrt(mu) phi_{n,l,m}, with fhat(xi) = int e^{-i v.xi} f(v) dv.
cplx psi_hat(const ModeIndex& mode, const Vec3& xi);

/// B_{n,l} prefactor of psi_hat.
cplx psi_hat_prefactor(int n, int l);

/// Keep modes with 2 <= 2n + l <= N and n + l >= 2; the result has truncation N.
SpectralState project_tilde(const SpectralState& state, int N);

/// sqrt(sum e^{2 c1 t w} w^alpha |g|^2) with w = 2n + l + 3/2.
/// Throws Error(Overflow) naming the dominant shell if the result is not representable.
double weighted_norm(const SpectralState& state, const NormSpec& spec);

/// l2 norm of the five (0,2,m) amplitudes.
double s2_norm(const SpectralState& state);

/// l2 norm of the five null-space amplitudes.
double nullspace_residual(const SpectralState& state);

}  // namespace landau
