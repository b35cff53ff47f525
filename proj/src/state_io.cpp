#include "landau/state_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "landau/error.hpp"

namespace landau {

namespace {

std::vector<std::string> split(const std::string& line, char sep)
{
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

std::string trim(std::string s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_double(double value)
{
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& field, const std::string& where)
{
  const std::string s = trim(field);
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Parse, where + ": cannot parse number '" + field + "'");
  }
  return value;
}

int parse_int(const std::string& field, const std::string& where)
{
  const std::string s = trim(field);
  int value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Parse, where + ": cannot parse integer '" + field + "'");
  }
  return value;
}

void write_state_csv(const SpectralState& state, std::ostream& out)
{
  out << "n,l,m,re,im\n";
  const auto& modes = state.modes();
  const auto coeffs = state.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == cplx{0.0, 0.0}) continue;
    out << modes[i].n << ',' << modes[i].l << ',' << modes[i].m << ',' << format_double(coeffs[i].real()) << ','
        << format_double(coeffs[i].imag()) << '\n';
  }
}

void write_state_csv(const SpectralState& state, const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  write_state_csv(state, out);
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

SpectralState read_state_csv(std::istream& in, int N)
{
  SpectralState state(N);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::string violations;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!header_seen) {
      if (t != "n,l,m,re,im") {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected header 'n,l,m,re,im'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(t, ',');
    const std::string where = "line " + std::to_string(line_no);
    if (fields.size() != 5) {
      throw Error(ErrorKind::Parse, where + ": expected 5 fields, got " + std::to_string(fields.size()));
    }
    const ModeIndex mode{parse_int(fields[0], where), parse_int(fields[1], where), parse_int(fields[2], where)};
    const cplx value{parse_double(fields[3], where), parse_double(fields[4], where)};
    if (!mode.valid()) {
      violations += " " + where + " (|m| > l or negative index)";
      continue;
    }
    if (mode.shell() > N) {
      violations += " " + where + " (shell " + std::to_string(mode.shell()) + " > N=" + std::to_string(N) + ")";
      continue;
    }
    state.set(mode, value);
  }
  if (!header_seen) throw Error(ErrorKind::Parse, "line 1: missing header 'n,l,m,re,im'");
  if (!violations.empty()) throw Error(ErrorKind::Invariant, "invalid coefficient rows:" + violations);
  return state;
}

SpectralState read_state_csv(const std::filesystem::path& path, int N)
{
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return read_state_csv(in, N);
}

}  // namespace landau
