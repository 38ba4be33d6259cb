#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "codeprov/cascade.hpp"
#include "codeprov/data_model.hpp"
#include "codeprov/lexical.hpp"

namespace codeprov::testing {

class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "codeprov");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& content);

/// Beta(a, b) from two gamma variates.
double beta_variate(std::mt19937_64& rng, double a, double b);

// ---------------------------------------------------------------------------
// Lexical oracle: a hand-written token scanner with its own keyword tables.

LexicalProfile lcs_token_oracle(const std::string& content, LanguageId language);

struct Snippet {
  LanguageId language;
  std::string content;
};

/// Languages covered by the oracle.
const std::vector<LanguageId>& oracle_languages();

/// Random snippets built from keywords, look-alike identifiers, operators,
/// comments and strings (some unterminated) for each oracle language.
std::vector<Snippet> snippet_corpus(std::uint64_t seed, std::size_t n);

/// Like snippet_corpus but every comment and string is closed and the text
/// ends with a newline.
Snippet well_formed_snippet(std::mt19937_64& rng, LanguageId language);

/// One control-flow statement, and one statement with a single logical
/// operator, each ending in a newline.
std::string control_flow_statement(LanguageId language);
std::string logical_op_statement(LanguageId language);

// ---------------------------------------------------------------------------
// Git fixture

/// Scripted 12-commit repository under `dir`: adds, modifies, a binary file,
/// a delete, a rename, a side branch merged with --no-ff, and one commit
/// outside the 2008-2010 window. Returns the repository path.
std::filesystem::path make_git_fixture(const std::filesystem::path& dir);

/// Changes expected from harvesting the fixture over 2008-01-01..2011-01-01
/// (commit hashes filled in from the repository).
std::vector<CommitFileChange> expected_fixture_changes(const std::filesystem::path& repo);

/// `git rev-parse` of a revision in `repo`.
std::string rev_parse(const std::filesystem::path& repo, const std::string& rev);

// ---------------------------------------------------------------------------
// Synthetic corpora

CodeSample make_sample(std::string id, ProvenanceLabel label, std::string content = "x = 1\n",
                       LanguageId language = LanguageId::Python);

/// Samples whose ids index `scores`: detector `d` returns scores[id][d].
struct ScoredCorpus {
  std::vector<CodeSample> samples;
  EnsembleConfig config;
  DetectorSet detectors;
};

/// Master is precise but misses most AI samples; auxiliaries catch nearly
/// all AI samples but fire on humans too.
ScoredCorpus asymmetric_corpus(std::uint64_t seed, std::size_t n = 1000, std::size_t aux_count = 4);

/// Low-entropy "AI" text: a few templates over a small vocabulary.
std::string low_entropy_text(std::mt19937_64& rng);
/// High-entropy "human" text: random identifiers, literals and punctuation.
std::string high_entropy_text(std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Random records

CodeSample random_sample(std::mt19937_64& rng, std::size_t index);
CommitFileChange random_change(std::mt19937_64& rng, std::size_t index);
VulnRecord random_vuln(std::mt19937_64& rng, std::size_t index);

}  // namespace codeprov::testing
