#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "codeprov/cascade.hpp"
#include "codeprov/git.hpp"
#include "codeprov/records.hpp"

namespace codeprov {

/// Keeps changes whose path extension is in `allowlist`, in order.
std::vector<CommitFileChange> filter_code_files(std::span<const CommitFileChange> changes,
                                                std::span<const std::string> allowlist);

/// The last change per (repo, path) when it is not a deletion, ordered by
/// repo then path.
std::vector<CommitFileChange> final_state(std::span<const CommitFileChange> changes);

/// Sample built from a change's post content; the id is the change id.
CodeSample sample_from_change(const CommitFileChange& change, ProvenanceLabel label);

struct SubsetResult {
  std::vector<CodeSample> samples;
  std::vector<std::string> diagnostics;
};

/// Throws PurityViolation unless spec.end <= 2011-01-01. Samples are the
/// final-state files at window end that pass the allowlist.
SubsetResult build_human_subset(const HarvestSpec& spec, unsigned workers = 1);

// ---------------------------------------------------------------------------

struct Task {
  std::string id;
  std::string prompt;
};

struct Topic {
  std::string id;
  std::string description;
  std::vector<Task> tasks;
};

struct TaskMatrix {
  std::vector<Topic> topics;
  std::vector<std::string> generators;

  std::size_t task_count() const;
  std::size_t cell_count() const { return task_count() * generators.size(); }
  /// Throws DataError on empty or duplicate ids.
  void validate() const;
};

inline constexpr std::size_t kTasksPerTopic = 5;

TaskMatrix task_matrix_from_json(const nlohmann::json& j);
/// The preset shipped in config/task_matrix.json.
const TaskMatrix& default_task_matrix();

/// One generator output: {"task_id", "model", "content", "language"?, "path"?}.
struct GeneratedResponse {
  std::string task_id;
  std::string model;
  std::string content;
  std::optional<LanguageId> language;
  std::optional<std::string> path;
};

ReadResult<GeneratedResponse> read_generated_responses(std::istream& in);

/// Feeds {"task_id", "model", "prompt"} lines for every cell to `command` and
/// parses its standard output as response lines. Throws DataError when the
/// command fails.
ReadResult<GeneratedResponse> generate_via_subprocess(const TaskMatrix& matrix, const std::vector<std::string>& command);

struct AiSubsetResult {
  std::vector<CodeSample> samples;
  std::vector<std::string> diagnostics;
  std::vector<std::pair<std::string, std::string>> missing_cells;  // (task, model)
};

/// One AI sample per covered (task, model) cell, in matrix order. Responses
/// for unknown tasks or models and repeated cells are reported and dropped;
/// uncovered cells are listed in missing_cells and in diagnostics.
AiSubsetResult build_ai_subset(const TaskMatrix& matrix, std::span<const GeneratedResponse> responses);

struct DedupResult {
  std::vector<CodeSample> samples;
  std::size_t removed = 0;
};

/// Exact-content dedup; the first occurrence wins.
DedupResult dedup(std::span<const CodeSample> samples);

/// Vulnerability import. With `sources_required` false, missing
/// intro_source/fix_source fields default to human so the records can be
/// labeled by `label_vuln_sources` afterwards.
ReadResult<VulnRecord> import_vuln_records(std::istream& in, bool sources_required = true);

/// Runs the cascade on the vulnerable fragment (intro_source) and the patched
/// fragment (fix_source). Fragment sample ids are "<cve>:vulnerable" and
/// "<cve>:patched"; external scores must use those ids.
std::vector<std::string> label_vuln_sources(std::vector<VulnRecord>& records, const EnsembleConfig& config,
                                            const DetectorSet& detectors, unsigned workers = 1);

std::vector<CodeSample> vuln_fragment_samples(std::span<const VulnRecord> records);

}  // namespace codeprov
