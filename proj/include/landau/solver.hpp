#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "landau/basis.hpp"
#include "landau/coupling.hpp"

namespace landau {

/// poly(t) e^{-rate t}; poly[k] is the coefficient of t^k.
struct ExpPolyTerm
{
  double rate = 0.0;
  std::vector<cplx> poly;
};

/// Finite sum of ExpPolyTerm. Rates closer than kRateMergeTol are merged.
class ExpPoly
{
 public:
  static constexpr double kRateMergeTol = 1e-9;

  const std::vector<ExpPolyTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const ExpPolyTerm& term);
  void add(const ExpPoly& other, cplx scale = 1.0, double extra_rate = 0.0);

  cplx operator()(double t) const;

 private:
  std::vector<ExpPolyTerm> terms_;
};

/// Solution of g' + lambda g = forcing(t), g(0) = g0, as an exponential polynomial.
/// A forcing rate within kRateMergeTol of lambda is treated as resonant (degree raising).
ExpPoly solve_forced_mode(double lambda, cplx g0, const ExpPoly& forcing);

/// Exact per-mode solution of the shell cascade.
class ExpPolyTrajectory
{
 public:
  ExpPolyTrajectory() = default;
  explicit ExpPolyTrajectory(int truncation);

  int truncation() const { return truncation_; }
  const ExpPoly& mode(const ModeIndex& m) const;
  ExpPoly& mode_mut(const ModeIndex& m);

  /// All amplitudes at time t.
  SpectralState at(double t) const;

 private:
  int truncation_ = 0;
  std::vector<ExpPoly> modes_;
};

/// Closed-form solution for data orthogonal to the null space: shell 2 decays
/// as e^{-12t} and every shell k > 2 is driven only by shell k - 2.
/// Throws Error(Precondition) if init has null-space amplitude above 1e-12.
ExpPolyTrajectory solve_cascade(const SpectralState& init, const CouplingTensor& tensor);

enum class Method { Cascade, EtdRk4, Rk4 };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

struct IntegratorConfig
{
  Method method = Method::EtdRk4;
  double dt = 1e-3;
  double t_final = 1.0;
  double c1 = 0.05;
  double alpha = 0.0;

  /// Throws Error(Config) on dt <= 0, dt > t_final, c1 outside [0, 16/11) or alpha > 0.
  void validate() const;
};

/// Classical RK4 is rejected when dt * max(lambda) exceeds this bound.
inline constexpr double kRk4StabilityBound = 2.78;

/// Full quadratic system g' + lambda g = L(g, g). Returns the states at
/// t = 0, h, 2h, ..., t_final with h = t_final / ceil(t_final / dt).
std::vector<SpectralState> integrate_numeric(const SpectralState& init, const CouplingTensor& tensor,
                                             const IntegratorConfig& cfg);

struct DiagnosticsRow
{
  double t = 0.0;
  double q_alpha_norm = 0.0;
  double gs_norm = 0.0;
  double s2_norm = 0.0;
  double nullspace_residual = 0.0;
  /// c1 * int_0^t |e^{c1 s H} g(s)|^2_{Q^{alpha+1}} ds, trapezoid rule on the samples.
  double energy_integral = 0.0;
};

std::vector<DiagnosticsRow> diagnostics(const std::vector<SpectralState>& series, double alpha, double c1);

/// Sample a trajectory on a time grid (each state carries its time).
std::vector<SpectralState> sample_trajectory(const ExpPolyTrajectory& traj, const std::vector<double>& times);

/// (4 sqrt(3) / 3 + sqrt(2)), the trilinear constant.
double trilinear_constant();

/// Smallness threshold c0(c1) = (16/11 - 3 c1 / 2) / trilinear_constant().
double smallness_threshold(double c1);

struct SmallnessCheck
{
  bool pass = false;
  double c0 = 0.0;
  double s2 = 0.0;
  double margin = 0.0;
};

/// Compare s2_norm(init) against c0(c1). Throws Error(Domain) unless 0 <= c1 < 32/33.
SmallnessCheck check_smallness(const SpectralState& init, double c1);

}  // namespace landau
