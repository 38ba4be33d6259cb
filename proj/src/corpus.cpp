#include "codeprov/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "embedded_config.hpp"
#include "codeprov/error.hpp"
#include "codeprov/lexical.hpp"
#include "codeprov/process.hpp"

namespace codeprov {

using nlohmann::json;

std::vector<CommitFileChange> filter_code_files(std::span<const CommitFileChange> changes,
                                                std::span<const std::string> allowlist) {
  const std::set<std::string> allowed(allowlist.begin(), allowlist.end());
  std::vector<CommitFileChange> out;
  for (const auto& c : changes)
    if (allowed.contains(extension_of(c.path))) out.push_back(c);
  return out;
}

std::vector<CommitFileChange> final_state(std::span<const CommitFileChange> changes) {
  std::map<std::pair<std::string, std::string>, const CommitFileChange*> last;
  for (const auto& c : changes) last[{c.repo, c.path}] = &c;
  std::vector<CommitFileChange> out;
  for (const auto& [key, c] : last)
    if (c->change_kind != ChangeKind::Deleted) out.push_back(*c);
  return out;
}

CodeSample sample_from_change(const CommitFileChange& change, ProvenanceLabel label) {
  CodeSample s;
  s.id = change.id();
  s.content = change.post_content.value_or(std::string());
  s.language = detect_language(change.path, s.content);
  s.label = label;
  s.origin.repo = change.repo;
  s.origin.commit = change.commit;
  s.origin.path = change.path;
  s.origin.timestamp = change.timestamp;
  s.origin.app_domain = classify_app_domain(s);
  return s;
}

SubsetResult build_human_subset(const HarvestSpec& spec, unsigned workers) {
  if (spec.end > human_window_end())
    throw PurityViolation("human subset window ends " + format_utc(spec.end) + ", after the " +
                          format_utc(human_window_end()) + " purity bound");
  spec.validate();
  HarvestResult h = harvest_all(spec, workers);
  SubsetResult r;
  r.diagnostics = std::move(h.diagnostics);
  for (const auto& c : final_state(filter_code_files(h.changes, spec.allowlist)))
    r.samples.push_back(sample_from_change(c, ProvenanceLabel::Human));
  return r;
}

// ---------------------------------------------------------------------------

std::size_t TaskMatrix::task_count() const {
  std::size_t n = 0;
  for (const auto& t : topics) n += t.tasks.size();
  return n;
}

void TaskMatrix::validate() const {
  if (topics.empty()) throw DataError("task matrix has no topics");
  if (generators.empty()) throw DataError("task matrix has no generators");
  std::set<std::string> ids;
  for (const auto& t : topics) {
    if (t.id.empty() || !ids.insert("topic:" + t.id).second) throw DataError("empty or duplicate topic id '" + t.id + "'");
    if (t.tasks.empty()) throw DataError("topic '" + t.id + "' has no tasks");
    for (const auto& k : t.tasks)
      if (k.id.empty() || !ids.insert("task:" + k.id).second)
        throw DataError("empty or duplicate task id '" + k.id + "'");
  }
  for (const auto& g : generators)
    if (g.empty() || !ids.insert("model:" + g).second) throw DataError("empty or duplicate generator '" + g + "'");
}

TaskMatrix task_matrix_from_json(const json& j) {
  TaskMatrix m;
  try {
    for (const auto& t : j.at("topics")) {
      Topic topic{t.at("id").get<std::string>(), t.value("description", std::string()), {}};
      for (const auto& k : t.at("tasks")) topic.tasks.push_back({k.at("id").get<std::string>(), k.at("prompt").get<std::string>()});
      m.topics.push_back(std::move(topic));
    }
    m.generators = j.at("generators").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed task matrix: ") + e.what());
  }
  m.validate();
  return m;
}

const TaskMatrix& default_task_matrix() {
  static const TaskMatrix m = task_matrix_from_json(json::parse(embedded::task_matrix_json()));
  return m;
}

namespace {

GeneratedResponse response_from_json(const json& j) {
  if (!j.is_object()) throw DataError("line is not a JSON object");
  GeneratedResponse r;
  try {
    r.task_id = j.at("task_id").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.content = j.at("content").get<std::string>();
    if (j.contains("language")) {
      const auto lang = parse_language(j["language"].get<std::string>());
      if (!lang) throw DataError("unknown language '" + j["language"].get<std::string>() + "'");
      r.language = lang;
    }
    if (j.contains("path")) r.path = j["path"].get<std::string>();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed response: ") + e.what());
  }
  return r;
}

ReadResult<GeneratedResponse> parse_responses(std::istream& in) {
  ReadResult<GeneratedResponse> r;
  for_each_line(in, [&](std::size_t line, const std::string& text, bool lossy) {
    try {
      r.records.push_back(response_from_json(json::parse(text)));
      if (lossy) r.diagnostics.push_back({line, "invalid UTF-8 replaced"});
    } catch (const std::exception& e) {
      r.diagnostics.push_back({line, e.what()});
    }
  });
  return r;
}

}  // namespace

ReadResult<GeneratedResponse> read_generated_responses(std::istream& in) { return parse_responses(in); }

ReadResult<GeneratedResponse> generate_via_subprocess(const TaskMatrix& matrix, const std::vector<std::string>& command) {
  std::string input;
  for (const auto& t : matrix.topics)
    for (const auto& k : t.tasks)
      for (const auto& g : matrix.generators) input += dump_line({{"task_id", k.id}, {"model", g}, {"prompt", k.prompt}}) + "\n";
  ProcessResult p;
  try {
    p = run_process(command, input);
  } catch (const std::system_error& e) {
    throw DataError(std::string("cannot start generator: ") + e.what());
  }
  if (p.exit_code != 0) throw DataError("generator exited with code " + std::to_string(p.exit_code));
  std::istringstream out(p.out);
  return parse_responses(out);
}

AiSubsetResult build_ai_subset(const TaskMatrix& matrix, std::span<const GeneratedResponse> responses) {
  matrix.validate();
  std::map<std::string, std::pair<const Topic*, const Task*>> tasks;
  for (const auto& t : matrix.topics)
    for (const auto& k : t.tasks) tasks[k.id] = {&t, &k};
  const std::set<std::string> models(matrix.generators.begin(), matrix.generators.end());

  AiSubsetResult r;
  std::map<std::pair<std::string, std::string>, const GeneratedResponse*> cells;
  for (const auto& resp : responses) {
    if (!tasks.contains(resp.task_id)) {
      r.diagnostics.push_back("response for unknown task '" + resp.task_id + "' dropped");
      continue;
    }
    if (!models.contains(resp.model)) {
      r.diagnostics.push_back("response from unknown model '" + resp.model + "' dropped");
      continue;
    }
    if (!cells.emplace(std::make_pair(resp.task_id, resp.model), &resp).second)
      r.diagnostics.push_back("repeated response for (" + resp.task_id + ", " + resp.model + "); first kept");
  }

  for (const auto& t : matrix.topics) {
    for (const auto& k : t.tasks) {
      for (const auto& g : matrix.generators) {
        auto it = cells.find({k.id, g});
        if (it == cells.end()) {
          r.missing_cells.emplace_back(k.id, g);
          r.diagnostics.push_back("missing response for (" + k.id + ", " + g + ")");
          continue;
        }
        const GeneratedResponse& resp = *it->second;
        CodeSample s;
        s.id = "ai:" + g + ":" + k.id;
        s.content = resp.content;
        if (resp.language) s.language = *resp.language;
        else if (resp.path) s.language = detect_language(*resp.path, s.content);
        s.label = ProvenanceLabel::AI;
        s.origin.generator = g;
        s.origin.task = k.id;
        s.origin.path = resp.path;
        s.origin.app_domain = classify_app_domain_text(t.description + " " + k.prompt);
        r.samples.push_back(std::move(s));
      }
    }
  }
  return r;
}

DedupResult dedup(std::span<const CodeSample> samples) {
  DedupResult r;
  std::unordered_set<std::string_view> seen;
  for (const auto& s : samples) {
    if (seen.insert(s.content).second) r.samples.push_back(s);
    else ++r.removed;
  }
  return r;
}

ReadResult<VulnRecord> import_vuln_records(std::istream& in, bool sources_required) {
  ReadResult<VulnRecord> r;
  std::set<std::string> ids;
  for_each_line(in, [&](std::size_t line, const std::string& text, bool) {
    try {
      json j = json::parse(text);
      if (!sources_required && j.is_object()) {
        if (!j.contains("intro_source")) j["intro_source"] = "human";
        if (!j.contains("fix_source")) j["fix_source"] = "human";
      }
      std::vector<std::string> warnings;
      VulnRecord v = record_from_json<VulnRecord>(j, warnings);
      if (!ids.insert(v.cve_id).second) throw DataError("duplicate record for " + v.cve_id);
      for (auto& w : warnings) r.diagnostics.push_back({line, std::move(w)});
      r.records.push_back(std::move(v));
    } catch (const json::exception& e) {
      r.diagnostics.push_back({line, std::string("malformed record: ") + e.what()});
    } catch (const DataError& e) {
      r.diagnostics.push_back({line, e.what()});
    }
  });
  return r;
}

std::vector<CodeSample> vuln_fragment_samples(std::span<const VulnRecord> records) {
  std::vector<CodeSample> out;
  for (const auto& v : records) {
    for (const auto& [suffix, content] :
         {std::pair<const char*, const std::string*>{"vulnerable", &v.vulnerable_fragment}, {"patched", &v.patched_fragment}}) {
      CodeSample s;
      s.id = v.cve_id + ":" + suffix;
      s.content = *content;
      s.language = v.language;
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<std::string> label_vuln_sources(std::vector<VulnRecord>& records, const EnsembleConfig& config,
                                            const DetectorSet& detectors, unsigned workers) {
  const auto samples = vuln_fragment_samples(records);
  const BatchResult batch = classify_batch(config, detectors, samples, workers);
  std::vector<std::string> diagnostics;
  for (const auto& f : batch.failures) diagnostics.push_back(f.sample_id + ": " + f.message + "; source left unchanged");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& intro = batch.verdicts[2 * i];
    const auto& fix = batch.verdicts[2 * i + 1];
    if (intro) records[i].intro_source = intro->label == ProvenanceLabel::AI ? Source::AI : Source::Human;
    if (fix) records[i].fix_source = fix->label == ProvenanceLabel::AI ? Source::AI : Source::Human;
  }
  return diagnostics;
}

}  // namespace codeprov
