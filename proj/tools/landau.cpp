#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "landau/error.hpp"
#include "landau/run.hpp"
#include "landau/tensor_cache.hpp"
#include "landau/verify.hpp"

namespace {

void report_error(const std::string& kind, const std::string& message)
{
  nlohmann::json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Spectral Galerkin solver for the homogeneous Landau equation"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Integrate from a JSON config");
  run_cmd->add_option("--config", config_path, "Path to the run configuration")->required();

  std::string level = "fast";
  std::uint64_t seed = 20240611;
  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle suites and print a JSON report");
  verify_cmd->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify_cmd->add_option("--seed", seed, "Seed for random sampling");

  int truncation = 0;
  std::string out_dir;
  auto* build_cmd = app.add_subcommand("build-tensor", "Build and cache the coupling tensor");
  build_cmd->add_option("--truncation", truncation, "Truncation N")->required();
  build_cmd->add_option("--out", out_dir, "Cache directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      return landau::run(landau::load_run_config(config_path), std::cerr);
    }
    if (*verify_cmd) {
      const auto report = landau::run_verify(landau::verify_level_from_string(level), seed);
      std::cout << report.to_json() << '\n';
      return report.passed() ? 0 : 1;
    }
    if (*build_cmd) {
      const auto start = std::chrono::steady_clock::now();
      const auto tensor = landau::build_tensor(truncation);
      const auto path = landau::tensor_cache_path(out_dir, truncation);
      std::filesystem::create_directories(out_dir);
      landau::write_tensor(tensor, path);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::cerr << "tensor N=" << truncation << " with " << tensor.size() << " entries written to " << path.string()
                << " in " << ms << " ms\n";
      return 0;
    }
  } catch (const landau::Error& e) {
    report_error(std::string(landau::to_string(e.kind())), e.what());
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    report_error("io", e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return 1;
  }
  return 0;
}
