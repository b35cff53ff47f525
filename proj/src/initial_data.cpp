#include "landau/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "landau/error.hpp"
#include "landau/specfun.hpp"
#include "landau/state_io.hpp"

namespace landau {

double example_dirac_coefficient(int k)
{
  if (k < 0) throw Error(ErrorKind::Domain, "example_dirac_coefficient: k must be >= 0");
  const double log_sq = std::log(2.0) + ln_gamma(k + 1.5) - 0.5 * std::log(std::numbers::pi) - ln_gamma(k + 1.0);
  return std::exp(0.5 * log_sq);
}

SpectralState init_example_dirac(int N)
{
  SpectralState state(N);
  for (int k = 2; 2 * k <= N; ++k) state.set({k, 0, 0}, example_dirac_coefficient(k));
  return state;
}

SpectralState init_single_mode(int N, const ModeIndex& mode, cplx amplitude)
{
  SpectralState state(N);
  state.set(mode, amplitude);
  return state;
}

LoadedState init_from_file(const std::filesystem::path& path, int N)
{
  LoadedState out{read_state_csv(path, N), false};
  out.in_nullspace_complement = nullspace_residual(out.state) == 0.0;
  return out;
}

SpectralState random_nperp_state(int N, double s2, std::mt19937_64& rng, double decay)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralState state(N);
  for (const ModeIndex& mode : *mode_table(N)) {
    if (mode.m < 0 || mode.shell() < 2 || is_nullspace_mode(mode)) continue;
    const double sd = std::pow(shubin_weight(mode), -decay);
    if (mode.m == 0) {
      state.set(mode, sd * normal(rng));
    } else {
      const cplx z{sd * normal(rng) / std::sqrt(2.0), sd * normal(rng) / std::sqrt(2.0)};
      state.set(mode, z);
      state.set({mode.n, mode.l, -mode.m}, std::conj(z));
    }
  }
  const double current = s2_norm(state);
  if (current > 0.0) {
    for (int m = -2; m <= 2; ++m) state.set({0, 2, m}, state.get({0, 2, m}) * (s2 / current));
  }
  return state;
}

}  // namespace landau
