#include "codeprov/detectors.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "codeprov/error.hpp"
#include "codeprov/process.hpp"

namespace codeprov {

namespace {

void check_range(const std::string& id, Decimal s) {
  if (s < Decimal() || s > Decimal::from_int(1))
    throw DetectorError(id, "score " + s.to_string() + " outside [0, 1]");
}

}  // namespace

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

DetectorSet::DetectorSet(std::initializer_list<DetectorPtr> detectors) {
  for (auto& d : detectors) add(d);
}

void DetectorSet::add(DetectorPtr detector) {
  const std::string id = detector->id();
  if (id.empty()) throw DataError("detector id is empty");
  if (!by_id_.emplace(id, std::move(detector)).second) throw DataError("duplicate detector id '" + id + "'");
  order_.push_back(id);
}

const Detector& DetectorSet::at(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw DataError("unknown detector '" + id + "'");
  return *it->second;
}

ConstantDetector::ConstantDetector(std::string id, Decimal value) : id_(std::move(id)), value_(value) {
  check_range(id_, value_);
}

DetectorScore ConstantDetector::score(const CodeSample&) const { return {id_, value_, {}}; }

DetectorScore FunctionDetector::score(const CodeSample& sample) const {
  const Decimal s = fn_(sample);
  check_range(id_, s);
  return {id_, s, {}};
}

ExternalScoreDetector::ExternalScoreDetector(std::string id, std::unordered_map<std::string, Decimal> scores)
    : id_(std::move(id)), scores_(std::move(scores)) {
  for (const auto& [sample, s] : scores_) check_range(id_, s);
}

DetectorScore ExternalScoreDetector::score(const CodeSample& sample) const {
  auto it = scores_.find(sample.id);
  if (it == scores_.end()) throw MissingScore(id_, sample.id);
  return {id_, it->second, {}};
}

ReadResult<ExternalScore> read_external_scores(std::istream& in) {
  ReadResult<ExternalScore> result;
  std::set<std::pair<std::string, std::string>> seen;
  for_each_line(in, [&](std::size_t number, const std::string& text, bool) {
    try {
      const auto j = nlohmann::json::parse(text);
      if (!j.is_object()) throw DataError("line is not a JSON object");
      ExternalScore s;
      const auto& sid = j.at("sample_id");
      const auto& did = j.at("detector_id");
      const auto& sc = j.at("score");
      if (!sid.is_string() || !did.is_string() || !(sc.is_number() || sc.is_string()))
        throw DataError("expected string sample_id, string detector_id, numeric score");
      s.sample_id = sid.get<std::string>();
      s.detector_id = did.get<std::string>();
      s.score = decimal_from_json(sc, "score");
      if (s.score < Decimal() || s.score > Decimal::from_int(1))
        throw DataError("score " + s.score.to_string() + " outside [0, 1]");
      if (!seen.emplace(s.sample_id, s.detector_id).second)
        throw DataError("duplicate score for (" + s.sample_id + ", " + s.detector_id + "); first kept");
      result.records.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      result.diagnostics.push_back({number, std::string("malformed score line: ") + e.what()});
    } catch (const DataError& e) {
      result.diagnostics.push_back({number, e.what()});
    }
  });
  return result;
}

std::map<std::string, std::shared_ptr<ExternalScoreDetector>> external_detectors(
    std::span<const ExternalScore> scores) {
  std::map<std::string, std::unordered_map<std::string, Decimal>> grouped;
  for (const auto& s : scores) grouped[s.detector_id].emplace(s.sample_id, s.score);
  std::map<std::string, std::shared_ptr<ExternalScoreDetector>> out;
  for (auto& [id, table] : grouped) out.emplace(id, std::make_shared<ExternalScoreDetector>(id, std::move(table)));
  return out;
}

std::shared_ptr<ExternalScoreDetector> run_subprocess_detector(std::string id, const std::vector<std::string>& command,
                                                               std::span<const CodeSample> samples) {
  std::string input;
  for (const auto& s : samples) {
    if (s.id.find('\n') != std::string::npos) throw DetectorError(id, "sample id contains a newline: " + s.id);
    input += s.id + "\n";
  }
  ProcessResult r;
  try {
    r = run_process(command, input);
  } catch (const std::system_error& e) {
    throw DetectorError(id, std::string("cannot start scorer: ") + e.what());
  }
  if (r.exit_code != 0) throw DetectorError(id, "scorer exited with code " + std::to_string(r.exit_code));
  std::istringstream lines(r.out);
  std::unordered_map<std::string, Decimal> table;
  std::string line;
  std::size_t i = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (i >= samples.size()) throw DetectorError(id, "scorer printed more lines than samples");
    Decimal s;
    try {
      s = Decimal::parse(line);
    } catch (const std::exception&) {
      throw DetectorError(id, "scorer line " + std::to_string(i + 1) + " is not a decimal: '" + line + "'");
    }
    table.emplace(samples[i].id, s);
    ++i;
  }
  if (i != samples.size())
    throw DetectorError(id, "scorer printed " + std::to_string(i) + " scores for " + std::to_string(samples.size()) +
                                " samples");
  return std::make_shared<ExternalScoreDetector>(std::move(id), std::move(table));
}

std::string_view to_string(DetectorGroup g) {
  switch (g) {
    case DetectorGroup::HighPrecision: return "high_precision";
    case DetectorGroup::HighRecall: return "high_recall";
    case DetectorGroup::Excluded: return "excluded";
  }
  return "excluded";
}

DetectorGroup assign_group(const MetricsReport& m) {
  if (!m.f1 || *m.f1 < kExclusionF1) return DetectorGroup::Excluded;
  // A defined F1 implies both precision and recall are defined.
  return *m.precision >= *m.recall ? DetectorGroup::HighPrecision : DetectorGroup::HighRecall;
}

std::vector<DetectorProfile> profile_detectors(const DetectorSet& detectors, std::span<const CodeSample> corpus) {
  bool has_ai = false, has_human = false;
  for (const auto& s : corpus) {
    has_ai |= s.label == ProvenanceLabel::AI;
    has_human |= s.label == ProvenanceLabel::Human;
  }
  if (!has_ai || !has_human) throw DataError("profiling corpus must contain both human and AI samples");

  std::vector<DetectorProfile> profiles;
  for (const auto& id : detectors.ids()) {
    const Detector& d = detectors.at(id);
    std::vector<LabeledPrediction> preds;
    preds.reserve(corpus.size());
    for (const auto& s : corpus) preds.push_back({s.id, d.score(s).score >= kProfileThreshold});
    DetectorProfile p;
    p.detector_id = id;
    p.metrics = metrics(confusion(preds, corpus));
    p.group = assign_group(p.metrics);
    profiles.push_back(std::move(p));
  }
  return profiles;
}

}  // namespace codeprov
