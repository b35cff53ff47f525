#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "landau/basis.hpp"
#include "landau/solver.hpp"

namespace landau {

/// Which initial datum to build.
struct InitialDatum
{
  enum class Kind { ExampleDirac, SingleMode, File, Random };
  Kind kind = Kind::ExampleDirac;
  ModeIndex mode;                      // SingleMode
  cplx amplitude{1.0, 0.0};            // SingleMode
  std::filesystem::path path;          // File
  double s2 = 0.0;                     // Random
  std::uint64_t seed = 0;              // Random
};

struct RunConfig
{
  int truncation = 0;
  IntegratorConfig integrator;
  InitialDatum initial;
  std::filesystem::path diagnostics_csv;
  std::filesystem::path final_state_csv;
  std::optional<std::filesystem::path> trajectory_csv;
  std::filesystem::path tensor_cache_dir = "tensor_cache";

  /// Throws Error(Config) if any invariant fails.
  void validate() const;
};

/// Parse a JSON config. Relative paths are resolved against `base_dir`.
/// Required: truncation, alpha, dt, t_final, initial, output.diagnostics, output.final_state.
/// Optional: method (default etd-rk4), c1 (default 0.05), output.trajectory, tensor_cache_dir.
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Cache directory after applying the LANDAU_TENSOR_DIR override.
std::filesystem::path effective_tensor_dir(const RunConfig& config);

/// Build the initial state described by the config.
SpectralState build_initial_state(const RunConfig& config);

/// Full pipeline: tensor, initial datum, smallness check, integration, outputs.
/// Progress lines go to `log`. Returns 0 on success; module errors propagate as Error.
int run(const RunConfig& config, std::ostream& log);

/// Diagnostics CSV with header t,q_alpha_norm,gs_norm,s2_norm,nullspace_residual,energy_integral.
void write_diagnostics_csv(const std::vector<DiagnosticsRow>& rows, const std::filesystem::path& path);

}  // namespace landau
