#pragma once

#include <cstdint>
#include <filesystem>
#include <random>

#include "landau/basis.hpp"

namespace landau {

/// sqrt(2 Gamma(k + 3/2) / (sqrt(pi) k!)), the radial coefficient of the
/// Dirac-minus-Maxwellian datum on mode (k, 0, 0).
double example_dirac_coefficient(int k);

/// Radial datum with g_{k,0,0} = example_dirac_coefficient(k) for 2 <= k <= N/2.
SpectralState init_example_dirac(int N);

/// Single amplitude on one mode.
SpectralState init_single_mode(int N, const ModeIndex& mode, cplx amplitude);

/// Coefficient CSV (see state_io.hpp); `in_nullspace_complement` reports whether
/// the five null-space amplitudes vanish.
struct LoadedState
{
  SpectralState state;
  bool in_nullspace_complement = false;
};
LoadedState init_from_file(const std::filesystem::path& path, int N);

/// Random datum satisfying the reality symmetry with zero null-space part.
/// Amplitudes are complex normal with standard deviation (2n+l+3/2)^{-decay};
/// the shell-2 block is then rescaled to have norm `s2`.
SpectralState random_nperp_state(int N, double s2, std::mt19937_64& rng, double decay = 1.0);

}  // namespace landau
