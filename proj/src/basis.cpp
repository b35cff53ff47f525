#include "landau/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "landau/error.hpp"
#include "landau/specfun.hpp"

namespace landau {

namespace {

constexpr double pi = std::numbers::pi;

std::string mode_str(const ModeIndex& mode)
{
  return "(" + std::to_string(mode.n) + "," + std::to_string(mode.l) + "," + std::to_string(mode.m) + ")";
}

}  // namespace

std::size_t shell_size(int k)
{
  if (k < 0) return 0;
  std::size_t count = 0;
  for (int n = 0; 2 * n <= k; ++n) count += static_cast<std::size_t>(2 * (k - 2 * n) + 1);
  return count;
}

std::size_t mode_count(int N)
{
  std::size_t count = 0;
  for (int k = 0; k <= N; ++k) count += shell_size(k);
  return count;
}

std::size_t mode_offset(const ModeIndex& mode)
{
  if (!mode.valid()) {
    throw Error(ErrorKind::Index, "mode_offset: invalid mode " + mode_str(mode));
  }
  const int k = mode.shell();
  std::size_t offset = mode_count(k - 1);
  for (int n = 0; n < mode.n; ++n) offset += static_cast<std::size_t>(2 * (k - 2 * n) + 1);
  return offset + static_cast<std::size_t>(mode.m + mode.l);
}

std::shared_ptr<const std::vector<ModeIndex>> mode_table(int N)
{
  if (N < 0) {
    throw Error(ErrorKind::Domain, "mode_table: truncation must be >= 0");
  }
  static std::mutex lock;
  static std::map<int, std::shared_ptr<const std::vector<ModeIndex>>> tables;
  std::lock_guard guard(lock);
  auto& slot = tables[N];
  if (!slot) {
    auto modes = std::make_shared<std::vector<ModeIndex>>();
    modes->reserve(mode_count(N));
    for (int k = 0; k <= N; ++k) {
      for (int n = 0; 2 * n <= k; ++n) {
        const int l = k - 2 * n;
        for (int m = -l; m <= l; ++m) modes->push_back({n, l, m});
      }
    }
    slot = std::move(modes);
  }
  return slot;
}

bool is_nullspace_mode(const ModeIndex& mode)
{
  return (mode.n == 0 && mode.l <= 1) || (mode.n == 1 && mode.l == 0);
}

SpectralState::SpectralState(int truncation, double t)
    : truncation_(truncation)
    , t_(t)
{
  if (truncation < 0) {
    throw Error(ErrorKind::Domain, "SpectralState: truncation must be >= 0");
  }
  modes_ = mode_table(truncation);
  coeffs_.assign(modes_->size(), cplx{0.0, 0.0});
}

cplx SpectralState::get(const ModeIndex& mode) const
{
  if (!mode.valid() || mode.shell() > truncation_) return {0.0, 0.0};
  return coeffs_[mode_offset(mode)];
}

void SpectralState::set(const ModeIndex& mode, cplx value)
{
  if (!mode.valid() || mode.shell() > truncation_) {
    throw Error(ErrorKind::Index,
                "SpectralState::set: mode " + mode_str(mode) + " outside truncation " + std::to_string(truncation_));
  }
  coeffs_[mode_offset(mode)] = value;
}

bool SpectralState::has_reality_symmetry(double tol) const
{
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const ModeIndex& mode = (*modes_)[i];
    if (mode.m < 0) continue;
    const cplx mirror = get({mode.n, mode.l, -mode.m});
    if (std::abs(mirror - std::conj(coeffs_[i])) > tol) return false;
  }
  return true;
}

double lambda_eig(int n, int l)
{
  if (n < 0 || l < 0) {
    throw Error(ErrorKind::Index, "lambda_eig: negative index");
  }
  const int k = 2 * n + l;
  if (k <= 1 || (n == 1 && l == 0)) return 0.0;
  if (n == 0 && l == 2) return 12.0;
  return 2.0 * k + static_cast<double>(l) * (l + 1);
}

double sqrt_maxwellian(const Vec3& v)
{
  const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return std::pow(2.0 * pi, -0.75) * std::exp(-0.25 * r2);
}

cplx phi_eval(const ModeIndex& mode, const Vec3& v)
{
  if (!mode.valid()) {
    throw Error(ErrorKind::Index, "phi_eval: invalid mode " + mode_str(mode));
  }
  const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const double r = std::sqrt(r2);
  if (r == 0.0 && mode.l > 0) return {0.0, 0.0};
  const double log_norm =
      0.5 * (ln_gamma(mode.n + 1.0) - 0.5 * std::log(2.0) - ln_gamma(mode.n + mode.l + 1.5));
  const double radial = std::exp(log_norm - 0.25 * r2) * std::pow(r / std::sqrt(2.0), mode.l) *
                        laguerre(mode.n, mode.l + 0.5, 0.5 * r2);
  const SpherePoint s = sphere_angles(v[0], v[1], v[2]);
  return radial * ylm(mode.l, mode.m, s.theta, s.phi);
}

cplx psi_hat_prefactor(int n, int l)
{
  const double log_mag = 0.75 * std::log(2.0 * pi) -
                         0.5 * (0.5 * std::log(2.0) + ln_gamma(n + 1.0) + ln_gamma(n + l + 1.5) +
                                (2.0 * n + l) * std::log(2.0));
  // (-i)^l cycles through 1, -i, -1, i.
  static constexpr cplx phase[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  return std::exp(log_mag) * phase[l % 4];
}

cplx psi_hat(const ModeIndex& mode, const Vec3& xi)
{
  if (!mode.valid()) {
    throw Error(ErrorKind::Index, "psi_hat: invalid mode " + mode_str(mode));
  }
  const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  const double r = std::sqrt(r2);
  const int k = mode.shell();
  if (r == 0.0 && k > 0) return {0.0, 0.0};
  const SpherePoint s = sphere_angles(xi[0], xi[1], xi[2]);
  const double radial = std::pow(r, k) * std::exp(-0.5 * r2);
  return psi_hat_prefactor(mode.n, mode.l) * radial * ylm(mode.l, mode.m, s.theta, s.phi);
}

SpectralState project_tilde(const SpectralState& state, int N)
{
  if (N > state.truncation()) {
    throw Error(ErrorKind::DimensionMismatch, "project_tilde: N=" + std::to_string(N) +
                                                  " exceeds state truncation " +
                                                  std::to_string(state.truncation()));
  }
  SpectralState out(N, state.time());
  const auto& modes = out.modes();
  auto dst = out.coeffs();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i].shell() >= 2 && !is_nullspace_mode(modes[i])) dst[i] = state.coeffs()[i];
  }
  return out;
}

double weighted_norm(const SpectralState& state, const NormSpec& spec)
{
  const auto& modes = state.modes();
  const auto coeffs = state.coeffs();
  long double max_log = -std::numeric_limits<long double>::infinity();
  int max_shell = -1;
  std::vector<long double> logs(coeffs.size(), -std::numeric_limits<long double>::infinity());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double a = std::abs(coeffs[i]);
    if (a == 0.0) continue;
    const long double w = shubin_weight(modes[i]);
    logs[i] = 2.0L * spec.c1 * spec.t * w + spec.alpha * std::log(w) + 2.0L * std::log(static_cast<long double>(a));
    if (logs[i] > max_log) {
      max_log = logs[i];
      max_shell = modes[i].shell();
    }
  }
  if (max_shell < 0) return 0.0;
  long double sum = 0.0L;
  for (long double lg : logs) sum += std::exp(lg - max_log);
  const double norm = static_cast<double>(std::exp(0.5L * (max_log + std::log(sum))));
  if (!std::isfinite(norm)) {
    throw Error(ErrorKind::Overflow, "weighted_norm: weight overflows at shell " + std::to_string(max_shell));
  }
  return norm;
}

double s2_norm(const SpectralState& state)
{
  double sum = 0.0;
  for (int m = -2; m <= 2; ++m) sum += std::norm(state.get({0, 2, m}));
  return std::sqrt(sum);
}

double nullspace_residual(const SpectralState& state)
{
  double sum = std::norm(state.get({0, 0, 0})) + std::norm(state.get({1, 0, 0}));
  for (int m = -1; m <= 1; ++m) sum += std::norm(state.get({0, 1, m}));
  return std::sqrt(sum);
}

}  // namespace landau
