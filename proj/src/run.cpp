#include "landau/run.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "landau/error.hpp"
#include "landau/initial_data.hpp"
#include "landau/state_io.hpp"
#include "landau/tensor_cache.hpp"

namespace landau {

namespace {

using json = nlohmann::json;

const json& require(const json& obj, const char* key)
{
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorKind::Config, std::string("config: missing required key '") + key + "'");
  }
  return obj.at(key);
}

template <typename T>
T get_as(const json& value, const char* key)
{
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::Config, std::string("config: key '") + key + "' has the wrong type");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

InitialDatum parse_initial(const json& j, const std::filesystem::path& base)
{
  InitialDatum d;
  const auto kind = get_as<std::string>(require(j, "kind"), "initial.kind");
  if (kind == "example_dirac") {
    d.kind = InitialDatum::Kind::ExampleDirac;
  } else if (kind == "single_mode") {
    d.kind = InitialDatum::Kind::SingleMode;
    const auto mode = get_as<std::array<int, 3>>(require(j, "mode"), "initial.mode");
    d.mode = {mode[0], mode[1], mode[2]};
    if (j.contains("amplitude")) {
      const auto amp = get_as<std::array<double, 2>>(j.at("amplitude"), "initial.amplitude");
      d.amplitude = {amp[0], amp[1]};
    }
  } else if (kind == "file") {
    d.kind = InitialDatum::Kind::File;
    d.path = resolve(base, get_as<std::string>(require(j, "path"), "initial.path"));
  } else if (kind == "random") {
    d.kind = InitialDatum::Kind::Random;
    d.s2 = get_as<double>(require(j, "s2"), "initial.s2");
    d.seed = get_as<std::uint64_t>(require(j, "seed"), "initial.seed");
  } else {
    throw Error(ErrorKind::Config, "config: unknown initial.kind '" + kind + "'");
  }
  return d;
}

}  // namespace

void RunConfig::validate() const
{
  if (truncation < 2) throw Error(ErrorKind::Config, "config: truncation must be >= 2");
  integrator.validate();
  if (initial.kind == InitialDatum::Kind::SingleMode &&
      (!initial.mode.valid() || initial.mode.shell() > truncation)) {
    throw Error(ErrorKind::Config, "config: initial.mode is invalid or outside the truncation");
  }
  if (initial.kind == InitialDatum::Kind::Random && !(initial.s2 >= 0.0)) {
    throw Error(ErrorKind::Config, "config: initial.s2 must be >= 0");
  }
}

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir)
{
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Config, "config: top level must be an object");
  RunConfig cfg;
  cfg.truncation = get_as<int>(require(j, "truncation"), "truncation");
  cfg.integrator.alpha = get_as<double>(require(j, "alpha"), "alpha");
  cfg.integrator.dt = get_as<double>(require(j, "dt"), "dt");
  cfg.integrator.t_final = get_as<double>(require(j, "t_final"), "t_final");
  if (j.contains("c1")) cfg.integrator.c1 = get_as<double>(j.at("c1"), "c1");
  if (j.contains("method")) cfg.integrator.method = method_from_string(get_as<std::string>(j.at("method"), "method"));
  cfg.initial = parse_initial(require(j, "initial"), base_dir);
  const json& out = require(j, "output");
  cfg.diagnostics_csv = resolve(base_dir, get_as<std::string>(require(out, "diagnostics"), "output.diagnostics"));
  cfg.final_state_csv = resolve(base_dir, get_as<std::string>(require(out, "final_state"), "output.final_state"));
  if (out.contains("trajectory")) {
    cfg.trajectory_csv = resolve(base_dir, get_as<std::string>(out.at("trajectory"), "output.trajectory"));
  }
  if (j.contains("tensor_cache_dir")) {
    cfg.tensor_cache_dir = resolve(base_dir, get_as<std::string>(j.at("tensor_cache_dir"), "tensor_cache_dir"));
  } else {
    cfg.tensor_cache_dir = base_dir / cfg.tensor_cache_dir;
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str(), path.parent_path().empty() ? "." : path.parent_path());
}

std::filesystem::path effective_tensor_dir(const RunConfig& config)
{
  if (const char* env = std::getenv("LANDAU_TENSOR_DIR"); env != nullptr && *env != '\0') return env;
  return config.tensor_cache_dir;
}

SpectralState build_initial_state(const RunConfig& config)
{
  const int N = config.truncation;
  switch (config.initial.kind) {
    case InitialDatum::Kind::ExampleDirac: return init_example_dirac(N);
    case InitialDatum::Kind::SingleMode: return init_single_mode(N, config.initial.mode, config.initial.amplitude);
    case InitialDatum::Kind::File: return init_from_file(config.initial.path, N).state;
    case InitialDatum::Kind::Random: {
      std::mt19937_64 rng(config.initial.seed);
      return random_nperp_state(N, config.initial.s2, rng);
    }
  }
  throw Error(ErrorKind::Config, "config: unhandled initial datum");
}

void write_diagnostics_csv(const std::vector<DiagnosticsRow>& rows, const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out << "t,q_alpha_norm,gs_norm,s2_norm,nullspace_residual,energy_integral\n";
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.q_alpha_norm) << ',' << format_double(r.gs_norm) << ','
        << format_double(r.s2_norm) << ',' << format_double(r.nullspace_residual) << ','
        << format_double(r.energy_integral) << '\n';
  }
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

namespace {

void write_trajectory_csv(const std::vector<SpectralState>& series, const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out << "t,n,l,m,re,im\n";
  for (const auto& s : series) {
    const auto& modes = s.modes();
    const auto c = s.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == cplx{0.0, 0.0}) continue;
      out << format_double(s.time()) << ',' << modes[i].n << ',' << modes[i].l << ',' << modes[i].m << ','
          << format_double(c[i].real()) << ',' << format_double(c[i].imag()) << '\n';
    }
  }
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& log)
{
  config.validate();
  const auto dir = effective_tensor_dir(config);
  const auto start = std::chrono::steady_clock::now();
  const CachedTensor cached = load_or_build_tensor(dir, config.truncation);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  log << "tensor N=" << config.truncation << (cached.from_cache ? " loaded from cache " : " built and cached ")
      << tensor_cache_path(dir, config.truncation).string() << " in " << ms << " ms\n";

  const SpectralState init = build_initial_state(config);
  if (config.integrator.c1 >= 32.0 / 33.0) {
    log << "warning: c1=" << config.integrator.c1 << " leaves no smallness threshold (c0 <= 0); proceeding\n";
  } else if (const SmallnessCheck small = check_smallness(init, config.integrator.c1); small.pass) {
    log << "smallness: s2_norm=" << small.s2 << " <= c0=" << small.c0 << " (margin " << small.margin << ")\n";
  } else {
    log << "warning: smallness condition fails, s2_norm=" << small.s2 << " > c0=" << small.c0
        << "; proceeding\n";
  }

  const auto series = integrate_numeric(init, cached.tensor, config.integrator);
  log << "integrated " << series.size() - 1 << " steps with " << to_string(config.integrator.method) << "\n";

  for (const auto& p : {config.diagnostics_csv, config.final_state_csv, config.trajectory_csv.value_or("")}) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  }
  write_diagnostics_csv(diagnostics(series, config.integrator.alpha, config.integrator.c1), config.diagnostics_csv);
  write_state_csv(series.back(), config.final_state_csv);
  if (config.trajectory_csv) write_trajectory_csv(series, *config.trajectory_csv);
  log << "wrote " << config.diagnostics_csv.string() << " and " << config.final_state_csv.string() << "\n";
  return 0;
}

}  // namespace landau
