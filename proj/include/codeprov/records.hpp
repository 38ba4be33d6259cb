#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "codeprov/data_model.hpp"
#include "codeprov/decimal.hpp"

namespace codeprov {

using ordered_json = nlohmann::ordered_json;

/// A problem found while reading a line-oriented input. `line` is 1-based.
struct Diagnostic {
  std::size_t line = 0;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

template <typename Record>
struct ReadResult {
  std::vector<Record> records;
  std::vector<Diagnostic> diagnostics;
};

// Canonical JSON forms. Key order is fixed; absent optionals are omitted.
ordered_json to_json(const CodeSample& s);
ordered_json to_json(const CommitFileChange& c);
ordered_json to_json(const VulnRecord& v);

/// Parses one JSON object into a record. Throws DataError for malformed or
/// invariant-violating input; unknown open-enum values are mapped to their
/// Other variant and reported through `warnings`.
template <typename Record>
Record record_from_json(const nlohmann::json& j, std::vector<std::string>& warnings);

/// Writes one canonical line per record. All records are validated before
/// anything is written; a violation throws DataError naming the record.
std::size_t write_records(std::span<const CodeSample> records, std::ostream& out);
std::size_t write_records(std::span<const CommitFileChange> records, std::ostream& out);
std::size_t write_records(std::span<const VulnRecord> records, std::ostream& out);

/// Reads every line; well-formed lines become records and malformed lines
/// become diagnostics. Throws DataError only if the stream itself fails.
template <typename Record>
ReadResult<Record> read_records(std::istream& in);

/// Splits a stream into lines, sanitizing invalid UTF-8. Calls
/// `fn(line_number, text, lossy)` for each non-blank line.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn);

/// Decimal from a JSON string (exact) or number (integers exact, floats
/// rounded onto the 1e-12 grid). Throws DataError naming `what`.
Decimal decimal_from_json(const nlohmann::json& j, std::string_view what);

/// Serializes one JSON value onto a single line (UTF-8, no ASCII escaping).
std::string dump_line(const ordered_json& j);


template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto [clean, lossy] = sanitize_utf8(line);
    fn(number, clean, lossy);
  }
  if (in.bad()) throw std::ios_base::failure("stream read failure");
}

}  // namespace codeprov
