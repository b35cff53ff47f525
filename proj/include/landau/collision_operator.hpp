#pragma once

#include <span>

#include "landau/basis.hpp"
#include "landau/coupling.hpp"

namespace landau {

/// Multiply every amplitude by lambda_{n,l}.
SpectralState apply_linear(const SpectralState& state);

/// Coefficient-space bilinear operator: h_{n,l,m} = (L(f, g), phi_{n,l,m}) for
/// every mode with shell <= N. For f, g orthogonal to the null space the image
/// is orthogonal to it as well.
SpectralState apply_bilinear(const SpectralState& f, const SpectralState& g, const CouplingTensor& tensor);

/// Multiply every amplitude by (2n + l + 3/2)^power, i.e. the action of H^power.
SpectralState apply_shubin_power(const SpectralState& state, double power);

/// sum_i a_i conj(b_i); truncations must match.
cplx inner_product(const SpectralState& a, const SpectralState& b);

/// Compare the Fourier-side multiplier of a driver acting on psi_hat(target)
/// with the expansion into neighbouring modes. Drivers: (1,0,0) or (0,2,m2).
/// Returns the largest deviation relative to the sum of term magnitudes.
double fourier_multiplier_oracle(const ModeIndex& driver, const ModeIndex& target, std::span<const Vec3> xi_samples);

/// Both sides of the trilinear estimate
///   |(L(Sf, Sg), H^alpha Sh)| <= K |S2 f| |H^{(alpha+1)/2} S_{N-2} g| |H^{(alpha+1)/2} S_N h|
/// where S_k keeps modes with 2 <= 2n+l <= k and n+l >= 2, and K = trilinear_constant().
struct TrilinearSample
{
  double lhs = 0.0;
  double rhs = 0.0;
};
TrilinearSample trilinear_sample(const SpectralState& f, const SpectralState& g, const SpectralState& h, double alpha,
                                 const CouplingTensor& tensor);

enum class MomentIntegral { Orth1, Orth2, Orth3 };

/// 3D quadrature of int (v.w)^p Psi(w) dw against its closed form, where
/// Psi = sqrt(mu) phi for (0,1,m1), (0,2,m2) or (1,0,0). Every azimuthal index
/// is checked. Errors are scaled by |v|^p. Throws Error(QuadratureOrder) if
/// rules of order `order` and 2*order disagree by more than `tol`.
double moment_integral_oracle(MomentIntegral which, std::span<const Vec3> v_samples, int order = 8,
                              double tol = 1e-10);

}  // namespace landau
