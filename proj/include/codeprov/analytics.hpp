#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "codeprov/cascade.hpp"
#include "codeprov/data_model.hpp"
#include "codeprov/decimal.hpp"
#include "codeprov/stats.hpp"

namespace codeprov {

/// A changed file joined with its verdict.
struct FileRecord {
  std::string id;
  std::string repo;
  std::string path;
  std::int64_t timestamp = 0;
  LanguageId language = LanguageId::Other;
  TechStack tech_stack = TechStack::Other;
  FileFunction file_function = FileFunction::Other;
  bool is_ai = false;
};

enum class Dimension { Language, TechStack, FileFunction, Repo, All };
std::string_view to_string(Dimension d);

struct JoinResult {
  std::vector<FileRecord> files;
  std::vector<std::string> diagnostics;
};

/// Joins changes to verdicts by change id. With `final_state_only`, each
/// (repo, path) contributes its last non-deleted change; otherwise every
/// added or modified change counts. Changes without a verdict are skipped
/// with a diagnostic.
JoinResult join_files(std::span<const CommitFileChange> changes, std::span<const Verdict> verdicts,
                      bool final_state_only = true);

std::string dimension_key(const FileRecord& f, Dimension d);

struct AdoptionRow {
  std::string key;
  std::int64_t ai_files = 0;
  std::int64_t total_files = 0;
  Fraction ai_file_rate;

  friend bool operator==(const AdoptionRow&, const AdoptionRow&) = default;
};

/// Rows sorted by key. Throws DataError on an empty input.
std::vector<AdoptionRow> adoption_by(Dimension d, std::span<const FileRecord> files);

struct QuarterRow {
  std::string quarter;  // "2022Q1"
  std::string key;
  std::int64_t ai_files = 0;
  std::int64_t total_files = 0;
  Metric ai_file_rate;  // undefined for empty buckets
};

/// UTC calendar quarters from the earliest to the latest timestamp; every
/// key seen anywhere gets a row in every quarter, zero-count rows included.
std::vector<QuarterRow> quarterly_series(Dimension d, std::span<const FileRecord> files);

struct TopNGroup {
  std::size_t n = 0;
  std::size_t used = 0;  // repos per group actually available
  double top_mean_rate = 0.0, top_mean_total = 0.0, top_mean_ai = 0.0;
  double bottom_mean_rate = 0.0, bottom_mean_total = 0.0, bottom_mean_ai = 0.0;
};

inline constexpr std::size_t kTopNValues[] = {10, 100, 500};

struct TopNResult {
  std::vector<TopNGroup> groups;
  std::vector<std::string> diagnostics;
};

/// Repos ranked by rate descending, ties by name ascending. When fewer than
/// 2n repos exist, each group uses min(n, repo count) repos and a diagnostic
/// is emitted.
TopNResult topn_bottomn(std::span<const AdoptionRow> repo_rows, std::span<const std::size_t> n_values);

// ---------------------------------------------------------------------------
// Vulnerability analyses

struct LanguageImpactRow {
  std::string language;  // or "overall"
  std::int64_t records = 0;
  Fraction intro_ai_share;
  Fraction fix_ai_share;
  Fraction net_impact;  // intro_ai_share - fix_ai_share
};

/// One row per language with records (enum order), then "overall".
std::vector<LanguageImpactRow> net_impact(std::span<const VulnRecord> records);

enum class RiskCategory { InputValidationEncoding, CodeQualityRiskyApis, AccessControlPermissions, Other };
std::string_view to_string(RiskCategory c);
std::optional<RiskCategory> parse_risk_category(std::string_view s);

struct CweEntry {
  std::string id;
  RiskCategory category = RiskCategory::Other;
  std::string name;
  std::optional<std::string> alt_name;
};

class CweMap {
 public:
  static const CweMap& defaults();
  static CweMap from_json(const nlohmann::json& j);
  static CweMap load(const std::filesystem::path& path);

  const CweEntry* find(const std::string& cwe_id) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, CweEntry> entries_;
};

struct CweProfileRow {
  std::string cwe_id;
  std::string name;
  RiskCategory category = RiskCategory::Other;
  std::int64_t records = 0;
  std::int64_t ai_introduced = 0;
  Fraction ai_share;
};

struct CategoryRow {
  RiskCategory category = RiskCategory::Other;
  std::int64_t ai_introduced = 0;
  Metric share_of_ai;  // over all AI-introduced records
};

struct CweProfile {
  std::vector<CweProfileRow> cwes;  // sorted by cwe id (numeric)
  std::vector<CategoryRow> categories;
  std::vector<std::string> diagnostics;
};

CweProfile cwe_profile(std::span<const VulnRecord> records, const CweMap& map = CweMap::defaults());

/// CVSS of AI-introduced (group a) vs human-introduced (group b) records.
/// Throws DataError unless both groups are present.
RankTestResult severity_compare(std::span<const VulnRecord> records, double alpha = kDefaultAlpha);

struct AttackVectorRow {
  Source source = Source::Human;
  AttackVector vector = AttackVector::Network;
  std::int64_t count = 0;
  Fraction share;
};

/// Per intro source present, every vector's share; shares sum to 1.
std::vector<AttackVectorRow> attack_vector_distribution(std::span<const VulnRecord> records);

struct VulnQuarterRow {
  std::string quarter;
  std::int64_t records = 0;
  Metric intro_ai_rate;
  Metric fix_ai_rate;
  std::optional<double> mean_cvss_ai;
  std::optional<double> mean_cvss_human;
};

/// Quarters of the disclosure date, earliest to latest, empty ones included.
std::vector<VulnQuarterRow> vuln_quarterly(std::span<const VulnRecord> records);

// ---------------------------------------------------------------------------
// Corpus profile

struct CorpusProfile {
  struct DomainRow {
    AppDomain domain;
    std::int64_t human = 0, ai = 0;
  };
  struct LanguageRow {
    LanguageId language;
    std::int64_t human = 0, ai = 0, unknown = 0;
  };
  std::vector<DomainRow> domains;
  std::vector<LanguageRow> languages;
  /// LCS below 20, 20 to 80, above 80.
  std::int64_t lcs_low = 0, lcs_mid = 0, lcs_high = 0;
  std::int64_t total = 0;
};

CorpusProfile corpus_profile(std::span<const CodeSample> samples);

// ---------------------------------------------------------------------------
// Report files

struct AnalyticsInputs {
  std::vector<CommitFileChange> changes;
  std::vector<Verdict> verdicts;
  std::vector<VulnRecord> vulns;
  const CweMap* cwe_map = nullptr;  // defaults when null
  /// Adoption tables over every added/modified change instead of final-state files.
  bool per_commit = false;
};

/// Writes every CSV table and SVG chart into `out_dir` and returns the
/// written file names plus diagnostics. Analyses without input are skipped
/// with a diagnostic.
struct ReportFiles {
  std::vector<std::string> files;
  std::vector<std::string> diagnostics;
};

ReportFiles write_analytics(const AnalyticsInputs& in, const std::filesystem::path& out_dir);

/// CSV field quoting (RFC 4180).
std::string csv_field(std::string_view s);

}  // namespace codeprov
