#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace landau {

enum class VerifyLevel { Fast, Full };

VerifyLevel verify_level_from_string(std::string_view name);

/// One property suite: `value` is the observed worst case, `limit` the bound it
/// must stay under, and margin = limit - value.
struct VerifyCheck
{
  std::string name;
  bool passed = false;
  double value = 0.0;
  double limit = 0.0;
  double margin = 0.0;
  std::string detail;
};

struct VerifyReport
{
  VerifyLevel level = VerifyLevel::Fast;
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;
  /// Outcome of comparing the A2 channel sum with its stated upper bound.
  std::string a2_finding;
  double a2_max_ratio_to_bound = 0.0;
  double a2_closed_form_error = 0.0;

  bool passed() const;
  std::string to_json() const;
};

/// Run the oracle suites. Fast covers shells <= 6; full adds N = 20 trilinear sampling
/// and N = 10 cascade comparison.
VerifyReport run_verify(VerifyLevel level, std::uint64_t seed);

/// Closed form of the A2 channel sum at target (n, l):
/// 8 n (2n+2l+1) l (l+1) / (3 (2l+3) (2l-1)).
double a2_sum_closed_form(int n, int l);

}  // namespace landau
