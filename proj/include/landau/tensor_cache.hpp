#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "landau/coupling.hpp"

namespace landau {

/// `landau_coupling_N<N>.csv` inside `dir`.
std::filesystem::path tensor_cache_path(const std::filesystem::path& dir, int N);

/// Header `landau-coupling v1 N=<N>`, rows `channel,tn,tl,tm,sn,sl,sm,m2,coef`,
/// trailer `end checksum=<fnv1a-64 of the rows, hex>`.
void write_tensor(const CouplingTensor& tensor, std::ostream& out);
void write_tensor(const CouplingTensor& tensor, const std::filesystem::path& path);

/// Parse a cache file; nullopt if missing, stale (wrong N) or corrupt (checksum mismatch).
std::optional<CouplingTensor> read_tensor(const std::filesystem::path& path, int N);

struct CachedTensor
{
  CouplingTensor tensor;
  bool from_cache = false;
};

/// Load the tensor for N from `dir`, rebuilding and rewriting the file when absent or invalid.
CachedTensor load_or_build_tensor(const std::filesystem::path& dir, int N);

}  // namespace landau
