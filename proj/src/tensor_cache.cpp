#include "landau/tensor_cache.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "landau/error.hpp"
#include "landau/state_io.hpp"

namespace landau {

namespace {

constexpr std::uint64_t fnv_offset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t fnv_prime = 0x100000001b3ULL;

void fnv_update(std::uint64_t& h, const std::string& s)
{
  for (unsigned char c : s) {
    h ^= c;
    h *= fnv_prime;
  }
  h ^= static_cast<unsigned char>('\n');
  h *= fnv_prime;
}

std::string hex64(std::uint64_t v)
{
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string header_line(int N) { return "landau-coupling v1 N=" + std::to_string(N); }

std::string entry_line(const CouplingEntry& e)
{
  std::ostringstream row;
  row << to_string(e.channel) << ',' << e.target.n << ',' << e.target.l << ',' << e.target.m << ',' << e.source.n
      << ',' << e.source.l << ',' << e.source.m << ',' << e.driver_m << ',' << format_double(e.coef);
  return row.str();
}

}  // namespace

std::filesystem::path tensor_cache_path(const std::filesystem::path& dir, int N)
{
  return dir / ("landau_coupling_N" + std::to_string(N) + ".csv");
}

void write_tensor(const CouplingTensor& tensor, std::ostream& out)
{
  out << header_line(tensor.truncation()) << '\n';
  std::uint64_t h = fnv_offset;
  for (const auto& e : tensor.entries()) {
    const std::string line = entry_line(e);
    fnv_update(h, line);
    out << line << '\n';
  }
  out << "end checksum=" << hex64(h) << '\n';
}

void write_tensor(const CouplingTensor& tensor, const std::filesystem::path& path)
{
  // Write to a sibling and rename so concurrent readers never see a partial file.
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + tmp + "' for writing");
    write_tensor(tensor, out);
    if (!out) throw Error(ErrorKind::Io, "write failed for '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::optional<CouplingTensor> read_tensor(const std::filesystem::path& path, int N)
{
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != header_line(N)) return std::nullopt;
  std::vector<CouplingEntry> entries;
  std::uint64_t h = fnv_offset;
  bool trailer = false;
  try {
    while (std::getline(in, line)) {
      if (line.rfind("end checksum=", 0) == 0) {
        if (line.substr(13) != hex64(h)) return std::nullopt;
        trailer = true;
        break;
      }
      fnv_update(h, line);
      std::vector<std::string> f;
      std::istringstream row(line);
      std::string field;
      while (std::getline(row, field, ',')) f.push_back(field);
      if (f.size() != 9) return std::nullopt;
      const Channel channel = channel_from_string(f[0]);
      const ModeIndex target{parse_int(f[1], "tensor"), parse_int(f[2], "tensor"), parse_int(f[3], "tensor")};
      const ModeIndex source{parse_int(f[4], "tensor"), parse_int(f[5], "tensor"), parse_int(f[6], "tensor")};
      const int driver_m = parse_int(f[7], "tensor");
      const double coef = parse_double(f[8], "tensor");
      if (!target.valid() || !source.valid() || target.shell() > N || source.shell() > N) return std::nullopt;
      entries.push_back({channel, target, source, driver_m, coef, static_cast<std::uint32_t>(mode_offset(target)),
                         static_cast<std::uint32_t>(mode_offset(source)),
                         static_cast<std::uint32_t>(mode_offset(driver_mode(channel, driver_m)))});
    }
    if (!trailer) return std::nullopt;
    return CouplingTensor(N, std::move(entries));
  } catch (const Error&) {
    return std::nullopt;
  }
}

CachedTensor load_or_build_tensor(const std::filesystem::path& dir, int N)
{
  const auto path = tensor_cache_path(dir, N);
  if (auto cached = read_tensor(path, N)) return {std::move(*cached), true};
  CachedTensor result{build_tensor(N), false};
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create tensor cache directory '" + dir.string() + "'");
  write_tensor(result.tensor, path);
  return result;
}

}  // namespace landau
