#include "landau/coupling.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "landau/error.hpp"
#include "landau/specfun.hpp"

namespace landau {

namespace {

constexpr double pi = std::numbers::pi;

bool valid_lm(int l, int m) { return l >= 0 && std::abs(m) <= l; }

// Target harmonic index lp and azimuth m + md of a driver with degree ld.
double driver_gaunt(int ld, int md, int l, int m, int lp)
{
  if (lp < 0 || !valid_lm(l, m) || std::abs(md + m) > lp) return 0.0;
  return gaunt(ld, md, l, m, lp, -md - m);
}

}  // namespace

double gaunt(int l1, int m1, int l2, int m2, int l3, int m3)
{
  if (!valid_lm(l1, m1) || !valid_lm(l2, m2) || !valid_lm(l3, m3)) return 0.0;
  if (m1 + m2 + m3 != 0) return 0.0;
  if ((l1 + l2 + l3) % 2 != 0) return 0.0;
  if (l3 < std::abs(l1 - l2) || l3 > l1 + l2) return 0.0;
  const QuadratureRule& rule = gauss_legendre_cached((l1 + l2 + l3) / 2 + 1);
  double sum = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double x = rule.nodes[i];
    sum += rule.weights[i] * normalized_assoc_legendre(l1, m1, x) * normalized_assoc_legendre(l2, m2, x) *
           normalized_assoc_legendre(l3, m3, x);
  }
  return 2.0 * pi * sum;
}

double coef_tilde_C(int m1, int m, int l, int lp) { return driver_gaunt(1, m1, l, m, lp); }

double coef_C(int m2, int m, int l, int lp) { return driver_gaunt(2, m2, l, m, lp); }

double A_minus(int n, int l, int m, int m1)
{
  if (n < 0 || l < 0) return 0.0;
  return 4.0 * std::sqrt(pi / 3.0) * (l - 1.0) * std::sqrt(2.0 * (n + 1.0)) * coef_tilde_C(m1, m, l, l - 1);
}

double A_plus(int n, int l, int m, int m1)
{
  if (n < 0 || l < 0) return 0.0;
  return 4.0 * std::sqrt(pi / 3.0) * (l + 2.0) * std::sqrt(2.0 * n + 2.0 * l + 3.0) * coef_tilde_C(m1, m, l, l + 1);
}

double A1(int n, int l, int m, int m2)
{
  if (n < 0 || l < 0) return 0.0;
  return -4.0 * std::sqrt(pi / 15.0) * std::sqrt(4.0 * (n + 2.0) * (n + 1.0)) * coef_C(m2, m, l, l - 2);
}

double A2(int n, int l, int m, int m2)
{
  if (n < 0 || l < 0) return 0.0;
  return 4.0 * std::sqrt(pi / 15.0) * std::sqrt(2.0 * (n + 1.0) * (2.0 * n + 2.0 * l + 3.0)) * coef_C(m2, m, l, l);
}

double A3(int n, int l, int m, int m2)
{
  if (n < 0 || l < 0) return 0.0;
  return -4.0 * std::sqrt(pi / 15.0) * std::sqrt((2.0 * n + 2.0 * l + 5.0) * (2.0 * n + 2.0 * l + 3.0)) *
         coef_C(m2, m, l, l + 2);
}

double drift_coefficient(int n, int l)
{
  if (n < 0 || l < 0) return 0.0;
  return 4.0 * std::sqrt(3.0 * (n + 1.0) * (2.0 * n + 2.0 * l + 3.0)) / 3.0;
}

std::string_view to_string(Channel channel)
{
  switch (channel) {
    case Channel::Diagonal: return "diag";
    case Channel::Minus: return "minus";
    case Channel::Plus: return "plus";
    case Channel::Drift: return "drift";
    case Channel::A1: return "A1";
    case Channel::A2: return "A2";
    case Channel::A3: return "A3";
  }
  return "?";
}

Channel channel_from_string(std::string_view name)
{
  for (Channel c : {Channel::Diagonal, Channel::Minus, Channel::Plus, Channel::Drift, Channel::A1, Channel::A2,
                    Channel::A3}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorKind::Parse, "unknown coupling channel '" + std::string(name) + "'");
}

ModeIndex driver_mode(Channel channel, int driver_m)
{
  switch (channel) {
    case Channel::Diagonal: return {0, 0, 0};
    case Channel::Minus:
    case Channel::Plus: return {0, 1, driver_m};
    case Channel::Drift: return {1, 0, 0};
    default: return {0, 2, driver_m};
  }
}

CouplingTensor::CouplingTensor(int truncation, std::vector<CouplingEntry> entries)
    : truncation_(truncation)
    , entries_(std::move(entries))
{
  const std::size_t n_modes = mode_count(truncation);
  row_start_.assign(n_modes + 1, 0);
  for (const auto& e : entries_) {
    if (e.target_index >= n_modes) {
      throw Error(ErrorKind::Invariant, "CouplingTensor: target outside truncation");
    }
    ++row_start_[e.target_index + 1];
  }
  for (std::size_t i = 0; i < n_modes; ++i) {
    row_start_[i + 1] += row_start_[i];
  }
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].target_index < entries_[i - 1].target_index) {
      throw Error(ErrorKind::Invariant, "CouplingTensor: entries not grouped by target");
    }
  }
}

std::span<const CouplingEntry> CouplingTensor::row(const ModeIndex& target) const
{
  if (!target.valid() || target.shell() > truncation_) return {};
  const std::size_t i = mode_offset(target);
  return std::span<const CouplingEntry>(entries_).subspan(row_start_[i], row_start_[i + 1] - row_start_[i]);
}

std::vector<CouplingEntry> CouplingTensor::channel_entries(const ModeIndex& target, Channel channel) const
{
  std::vector<CouplingEntry> out;
  for (const auto& e : row(target)) {
    if (e.channel == channel) out.push_back(e);
  }
  return out;
}

namespace {

void push_entry(std::vector<CouplingEntry>& out, Channel channel, const ModeIndex& target, const ModeIndex& source,
                int driver_m, double coef)
{
  if (!source.valid() || coef == 0.0) return;
  out.push_back({channel, target, source, driver_m, coef, static_cast<std::uint32_t>(mode_offset(target)),
                 static_cast<std::uint32_t>(mode_offset(source)),
                 static_cast<std::uint32_t>(mode_offset(driver_mode(channel, driver_m)))});
}

void target_row(const ModeIndex& t, std::vector<CouplingEntry>& out)
{
  const int n = t.n;
  const int l = t.l;
  const int m = t.m;
  push_entry(out, Channel::Diagonal, t, t, 0, -(2.0 * (2 * n + l) + static_cast<double>(l) * (l + 1)));
  for (int m1 = -1; m1 <= 1; ++m1) {
    const int ms = m - m1;
    if (n >= 1) push_entry(out, Channel::Minus, t, {n - 1, l + 1, ms}, m1, A_minus(n - 1, l + 1, ms, m1));
    if (l >= 1) push_entry(out, Channel::Plus, t, {n, l - 1, ms}, m1, A_plus(n, l - 1, ms, m1));
  }
  if (n >= 1) push_entry(out, Channel::Drift, t, {n - 1, l, m}, 0, drift_coefficient(n - 1, l));
  for (int m2 = -2; m2 <= 2; ++m2) {
    const int ms = m - m2;
    if (n >= 2) push_entry(out, Channel::A1, t, {n - 2, l + 2, ms}, m2, A1(n - 2, l + 2, ms, m2));
    if (n >= 1) push_entry(out, Channel::A2, t, {n - 1, l, ms}, m2, A2(n - 1, l, ms, m2));
    if (l >= 2) push_entry(out, Channel::A3, t, {n, l - 2, ms}, m2, A3(n, l - 2, ms, m2));
  }
}

}  // namespace

CouplingTensor build_tensor(int N, int max_truncation)
{
  if (N < 2) {
    throw Error(ErrorKind::Domain, "build_tensor: truncation must be >= 2, got " + std::to_string(N));
  }
  if (N > max_truncation) {
    throw Error(ErrorKind::Capacity, "build_tensor: truncation " + std::to_string(N) + " exceeds maximum " +
                                         std::to_string(max_truncation));
  }
  std::vector<std::vector<CouplingEntry>> per_shell(static_cast<std::size_t>(N) + 1);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k <= N; ++k) {
    auto& out = per_shell[k];
    for (int n = 0; 2 * n <= k; ++n) {
      const int l = k - 2 * n;
      for (int m = -l; m <= l; ++m) target_row({n, l, m}, out);
    }
  }
  std::vector<CouplingEntry> entries;
  for (auto& shell : per_shell) entries.insert(entries.end(), shell.begin(), shell.end());
  return CouplingTensor(N, std::move(entries));
}

double sum_sq_channel(Channel channel, int n, int l, int m_star)
{
  if (!valid_lm(l, m_star) || n < 0) {
    throw Error(ErrorKind::Index, "sum_sq_channel: need |m_star| <= l and n >= 0");
  }
  double sum = 0.0;
  for (int m2 = -2; m2 <= 2; ++m2) {
    const int m = m_star - m2;
    double c = 0.0;
    switch (channel) {
      case Channel::A1: c = A1(n - 2, l + 2, m, m2); break;
      case Channel::A2: c = A2(n - 1, l, m, m2); break;
      case Channel::A3: c = A3(n, l - 2, m, m2); break;
      default: throw Error(ErrorKind::Domain, "sum_sq_channel: channel must be A1, A2 or A3");
    }
    sum += c * c;
  }
  return sum;
}

}  // namespace landau
