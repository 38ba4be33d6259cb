#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "codeprov/data_model.hpp"

namespace codeprov {

inline constexpr std::uint64_t kDefaultMaxFileBytes = 1u << 20;

struct HarvestSpec {
  std::vector<std::filesystem::path> repos;
  /// Committer-time window [start, end), UTC seconds.
  std::int64_t start = 0;
  std::int64_t end = 0;
  /// Lowercase extensions with the dot. Harvesting itself keeps every text
  /// file; the allowlist is applied by the corpus builders.
  std::vector<std::string> allowlist;
  std::uint64_t max_file_bytes = kDefaultMaxFileBytes;

  /// Throws DataError when start >= end or the allowlist is empty.
  void validate() const;
};

/// Window presets.
std::int64_t human_window_start();  // 2008-01-01
std::int64_t human_window_end();    // 2011-01-01 (exclusive), also the purity bound
std::int64_t wild_window_start();   // 2022-01-01
std::int64_t wild_window_end();     // 2025-07-01

/// Extensions whose language is source code.
std::vector<std::string> default_code_extensions();

struct HarvestResult {
  std::vector<CommitFileChange> changes;
  std::vector<std::string> diagnostics;
};

/// Repository name used in change ids: directory name without ".git".
std::string repo_name(const std::filesystem::path& repo);

/// Walks the first-parent history of HEAD oldest first. Every commit whose
/// committer time falls in the window contributes one change per file that
/// differs from its first parent (the empty tree for a root commit). Renames
/// appear as Deleted + Added. Binary files (NUL in the first 8000 bytes),
/// files over max_file_bytes, submodules and symlinks are skipped with a
/// diagnostic. Throws DataError when the repository or HEAD is unreadable.
HarvestResult harvest_repo(const HarvestSpec& spec, const std::filesystem::path& repo);

/// Harvests every repository of the spec; results are concatenated in spec
/// order regardless of the worker count.
HarvestResult harvest_all(const HarvestSpec& spec, unsigned workers = 1);

}  // namespace codeprov
