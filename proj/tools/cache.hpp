#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "rsc/sparse.hpp"

namespace rsc::cli {

// Invariant factors on disk, one JSON file per matrix, named by a content hash.
class DiskCache : public InvariantCache {
 public:
  static constexpr const char* kAlgorithm = "rsc-snf-v1";

  // Matrices with fewer than min_nonzeros entries are computed directly.
  explicit DiskCache(std::filesystem::path dir, std::size_t min_nonzeros = 20000);

  std::optional<SparseInvariants> get(const SparseMatrix& m) override;
  void put(const SparseMatrix& m, const SparseInvariants& inv) override;

  const std::filesystem::path& dir() const { return dir_; }
  static std::string key(const SparseMatrix& m);

 private:
  std::filesystem::path dir_;
  std::size_t min_nonzeros_;
};

// RSC_CACHE_DIR, then $XDG_CACHE_HOME/rsc, then ~/.cache/rsc; empty if none is set.
std::filesystem::path default_cache_dir();

}  // namespace rsc::cli
