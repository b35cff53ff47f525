#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "landau/basis.hpp"

namespace landau {

/// Shortest decimal that round-trips a double exactly (at most 17 significant digits).
std::string format_double(double value);

/// Parse a full decimal field; throws Error(Parse) mentioning `where` on failure.
double parse_double(const std::string& field, const std::string& where);
int parse_int(const std::string& field, const std::string& where);

/// CSV with header `n,l,m,re,im`, one row per nonzero mode.
void write_state_csv(const SpectralState& state, std::ostream& out);
void write_state_csv(const SpectralState& state, const std::filesystem::path& path);

/// Parse a coefficient CSV into a state of truncation N. Rows must satisfy
/// |m| <= l and 2n + l <= N; all offending rows are listed in one Error(Invariant).
SpectralState read_state_csv(std::istream& in, int N);
SpectralState read_state_csv(const std::filesystem::path& path, int N);

}  // namespace landau
