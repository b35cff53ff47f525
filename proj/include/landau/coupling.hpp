#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "landau/basis.hpp"

namespace landau {

/// Integral over the unit sphere of Y_{l1}^{m1} Y_{l2}^{m2} Y_{l3}^{m3}.
/// Exact: after the phi integral the integrand is a polynomial of degree
/// l1+l2+l3 in cos(theta), integrated by a Gauss-Legendre rule of sufficient order.
double gaunt(int l1, int m1, int l2, int m2, int l3, int m3);

/// gaunt(1, m1, l, m, lp, -m1-m); zero when lp < 0 or |m1+m| > lp.
double coef_tilde_C(int m1, int m, int l, int lp);

/// gaunt(2, m2, l, m, lp, -m2-m) with the same conventions.
double coef_C(int m2, int m, int l, int lp);

/// Coefficients of L(phi_{0,1,m1}, phi_{n,l,m}) on phi_{n+1,l-1,m+m1} and phi_{n,l+1,m+m1}.
double A_minus(int n, int l, int m, int m1);
double A_plus(int n, int l, int m, int m1);

/// Coefficients of L(phi_{0,2,m2}, phi_{n,l,m}) on phi_{n+2,l-2}, phi_{n+1,l}, phi_{n,l+2}.
double A1(int n, int l, int m, int m2);
double A2(int n, int l, int m, int m2);
double A3(int n, int l, int m, int m2);

/// Coefficient of L(phi_{1,0,0}, phi_{n,l,m}) on phi_{n+1,l,m}: 4 sqrt(3(n+1)(2n+2l+3)) / 3.
double drift_coefficient(int n, int l);

/// The seven terms of the coefficient-space bilinear operator.
enum class Channel : std::uint8_t { Diagonal, Minus, Plus, Drift, A1, A2, A3 };

std::string_view to_string(Channel channel);
Channel channel_from_string(std::string_view name);

/// Driver mode of a channel: (0,0,0), (0,1,m1), (1,0,0) or (0,2,m2).
ModeIndex driver_mode(Channel channel, int driver_m);

/// One term h_target += coef * f_driver * g_source.
struct CouplingEntry
{
  Channel channel;
  ModeIndex target;
  ModeIndex source;
  int driver_m;
  double coef;
  std::uint32_t target_index;
  std::uint32_t source_index;
  std::uint32_t driver_index;
};

/// Sparse bilinear stencil for every target mode with shell <= N. Entries are
/// grouped by target in canonical mode order (CSR layout).
class CouplingTensor
{
 public:
  CouplingTensor() = default;
  CouplingTensor(int truncation, std::vector<CouplingEntry> entries);

  int truncation() const { return truncation_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const CouplingEntry> entries() const { return entries_; }

  /// All entries of one target mode.
  std::span<const CouplingEntry> row(const ModeIndex& target) const;

  /// Entries of one target restricted to one channel.
  std::vector<CouplingEntry> channel_entries(const ModeIndex& target, Channel channel) const;

 private:
  int truncation_ = 0;
  std::vector<CouplingEntry> entries_;
  std::vector<std::size_t> row_start_;
};

/// Largest truncation build_tensor accepts unless told otherwise.
inline constexpr int kMaxTensorTruncation = 64;

/// Materialize every channel for every target mode with shell <= N.
/// Throws Error(Capacity) if N > max_truncation.
CouplingTensor build_tensor(int N, int max_truncation = kMaxTensorTruncation);

/// Sum over m + m2 = m_star of the squared coefficient feeding target (n, l, m_star)
/// through channel A1, A2 or A3.
double sum_sq_channel(Channel channel, int n, int l, int m_star);

}  // namespace landau
