#include "codeprov/cascade.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "codeprov/error.hpp"
#include "codeprov/process.hpp"

namespace codeprov {

using nlohmann::json;

namespace {

const Decimal kOne = Decimal::from_int(1);

int128 parse_int128(const std::string& s) {
  if (s.empty()) throw DataError("empty integer");
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) throw DataError("malformed integer '" + s + "'");
  int128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw DataError("malformed integer '" + s + "'");
    v = v * 10 + (s[i] - '0');
  }
  return s[0] == '-' ? -v : v;
}

Decimal run_detector(const DetectorSet& detectors, const std::string& id, const CodeSample& sample) {
  DetectorScore s;
  try {
    s = detectors.at(id).score(sample);
  } catch (const DetectorError&) {
    throw;
  } catch (const std::exception& e) {
    throw DetectorError(id, e.what());
  }
  if (s.score < Decimal() || s.score > kOne)
    throw DetectorError(id, "score " + s.score.to_string() + " outside [0, 1]");
  return s.score;
}

void check_resolvable(const EnsembleConfig& config, const DetectorSet& detectors) {
  if (!detectors.contains(config.master_id)) throw DataError("unknown detector '" + config.master_id + "'");
  for (const auto& id : config.aux_ids)
    if (!detectors.contains(id)) throw DataError("unknown detector '" + id + "'");
}

Verdict classify_unchecked(const EnsembleConfig& config, const DetectorSet& detectors, const CodeSample& sample) {
  Verdict v;
  v.sample_id = sample.id;
  const Decimal master = run_detector(detectors, config.master_id, sample);
  v.component_scores[config.master_id] = master;

  if (config.mode != EnsembleMode::NoStage1 && master > config.tau1) {
    v.label = ProvenanceLabel::AI;
    v.final_score = master;
    v.decision_path = DecisionPath::Stage1Exit;
    return v;
  }
  if (config.mode == EnsembleMode::NoStage2) {
    v.label = ProvenanceLabel::Human;
    v.final_score = master;
    v.decision_path = DecisionPath::Stage1Fallthrough;
    return v;
  }

  AggregateScore agg;
  auto add = [&](const std::string& id, Decimal score) {
    const Decimal w = config.weight_of(id);
    agg.weighted_sum += static_cast<int128>(score.ticks()) * w.ticks();
    agg.weight_sum += w.ticks();
  };
  add(config.master_id, master);
  for (const auto& id : config.aux_ids) {
    const Decimal s = run_detector(detectors, id, sample);
    v.component_scores[id] = s;
    add(id, s);
  }
  v.aggregate = agg;
  v.final_score = agg.floor();
  v.label = agg.at_least(config.tau2) ? ProvenanceLabel::AI : ProvenanceLabel::Human;
  v.decision_path = DecisionPath::Stage2Aggregate;
  return v;
}

}  // namespace

std::string_view to_string(EnsembleMode m) {
  switch (m) {
    case EnsembleMode::Full: return "full";
    case EnsembleMode::NoStage1: return "no-stage1";
    case EnsembleMode::NoStage2: return "no-stage2";
  }
  return "full";
}

std::optional<EnsembleMode> parse_mode(std::string_view s) {
  if (s == "full") return EnsembleMode::Full;
  if (s == "no-stage1") return EnsembleMode::NoStage1;
  if (s == "no-stage2") return EnsembleMode::NoStage2;
  return std::nullopt;
}

std::string_view to_string(DecisionPath p) {
  switch (p) {
    case DecisionPath::Stage1Exit: return "stage1_exit";
    case DecisionPath::Stage2Aggregate: return "stage2_aggregate";
    case DecisionPath::Stage1Fallthrough: return "stage1_fallthrough";
  }
  return "stage2_aggregate";
}

std::optional<DecisionPath> parse_decision_path(std::string_view s) {
  if (s == "stage1_exit") return DecisionPath::Stage1Exit;
  if (s == "stage2_aggregate") return DecisionPath::Stage2Aggregate;
  if (s == "stage1_fallthrough") return DecisionPath::Stage1Fallthrough;
  return std::nullopt;
}

Decimal EnsembleConfig::weight_of(const std::string& id) const {
  if (auto it = weights.find(id); it != weights.end()) return it->second;
  return id == master_id ? kMasterWeight : kAuxWeight;
}

void EnsembleConfig::validate() const {
  if (master_id.empty()) throw DataError("ensemble config: master detector id is empty");
  if (!(Decimal() < tau1 && tau1 <= kOne)) throw DataError("ensemble config: tau1 must be in (0, 1]");
  if (!(Decimal() <= tau2 && tau2 <= kOne)) throw DataError("ensemble config: tau2 must be in [0, 1]");
  std::set<std::string> seen;
  for (const auto& id : aux_ids) {
    if (id.empty()) throw DataError("ensemble config: auxiliary id is empty");
    if (id == master_id) throw DataError("ensemble config: master '" + id + "' is also listed as auxiliary");
    if (!seen.insert(id).second) throw DataError("ensemble config: auxiliary '" + id + "' listed twice");
  }
  for (const auto& [id, w] : weights) {
    if (id != master_id && !seen.contains(id))
      throw DataError("ensemble config: weight given for unconfigured detector '" + id + "'");
    if (w <= Decimal()) throw DataError("ensemble config: weight of '" + id + "' must be positive");
  }
}

EnsembleConfig ensemble_config_from_json(const json& j) {
  if (!j.is_object()) throw DataError("ensemble config must be a JSON object");
  EnsembleConfig c;
  try {
    c.master_id = j.at("master").get<std::string>();
    c.aux_ids = j.at("auxiliaries").get<std::vector<std::string>>();
    if (j.contains("tau1")) c.tau1 = decimal_from_json(j["tau1"], "tau1");
    if (j.contains("tau2")) c.tau2 = decimal_from_json(j["tau2"], "tau2");
    if (j.contains("mode")) {
      const auto m = parse_mode(j["mode"].get<std::string>());
      if (!m) throw DataError("unknown mode '" + j["mode"].get<std::string>() + "'");
      c.mode = *m;
    }
    if (j.contains("weights")) {
      for (const auto& [id, w] : j["weights"].items()) c.weights[id] = decimal_from_json(w, "weight of " + id);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("ensemble config: ") + e.what());
  }
  c.validate();
  return c;
}

ordered_json to_json(const EnsembleConfig& c) {
  ordered_json j;
  j["master"] = c.master_id;
  j["auxiliaries"] = c.aux_ids;
  j["tau1"] = c.tau1.to_string();
  j["tau2"] = c.tau2.to_string();
  j["mode"] = to_string(c.mode);
  if (!c.weights.empty()) {
    ordered_json w = ordered_json::object();
    for (const auto& [id, weight] : c.weights) w[id] = weight.to_string();
    j["weights"] = w;
  }
  return j;
}

Verdict classify(const EnsembleConfig& config, const DetectorSet& detectors, const CodeSample& sample) {
  config.validate();
  check_resolvable(config, detectors);
  return classify_unchecked(config, detectors, sample);
}

std::vector<Verdict> BatchResult::successful() const {
  std::vector<Verdict> out;
  for (const auto& v : verdicts)
    if (v) out.push_back(*v);
  return out;
}

BatchResult classify_batch(const EnsembleConfig& config, const DetectorSet& detectors,
                           std::span<const CodeSample> samples, unsigned workers) {
  config.validate();
  check_resolvable(config, detectors);
  struct Slot {
    std::optional<Verdict> verdict;
    std::optional<SampleFailure> failure;
  };
  auto slots = parallel_map<Slot>(samples.size(), workers, [&](std::size_t i) {
    Slot s;
    try {
      s.verdict = classify_unchecked(config, detectors, samples[i]);
    } catch (const DetectorError& e) {
      s.failure = SampleFailure{i, samples[i].id, e.detector_id(), e.what()};
    } catch (const std::exception& e) {
      s.failure = SampleFailure{i, samples[i].id, "", e.what()};
    }
    return s;
  });
  BatchResult r;
  r.verdicts.reserve(slots.size());
  for (auto& s : slots) {
    r.verdicts.push_back(std::move(s.verdict));
    if (s.failure) r.failures.push_back(std::move(*s.failure));
  }
  return r;
}

std::vector<SweepPoint> threshold_sweep(const EnsembleConfig& config, const DetectorSet& detectors,
                                        std::span<const CodeSample> corpus, std::span<const Decimal> grid) {
  if (grid.empty()) throw DataError("threshold sweep: empty grid");
  for (Decimal t : grid)
    if (t < Decimal() || t > kOne) throw DataError("threshold sweep: tau2 " + t.to_string() + " outside [0, 1]");
  bool has_ai = false, has_human = false;
  for (const auto& s : corpus) {
    has_ai |= s.label == ProvenanceLabel::AI;
    has_human |= s.label == ProvenanceLabel::Human;
  }
  if (!has_ai || !has_human) throw DataError("threshold sweep: corpus must contain both AI and Human samples");

  EnsembleConfig full = config;
  full.mode = EnsembleMode::Full;
  const BatchResult batch = classify_batch(full, detectors, corpus);
  if (!batch.failures.empty())
    throw DataError("threshold sweep: sample '" + batch.failures.front().sample_id + "' failed: " +
                    batch.failures.front().message);

  std::vector<SweepPoint> curve;
  for (Decimal t : grid) {
    std::vector<LabeledPrediction> preds;
    preds.reserve(corpus.size());
    for (const auto& v : batch.verdicts) {
      const bool ai = v->decision_path == DecisionPath::Stage1Exit || v->aggregate->at_least(t);
      preds.push_back({v->sample_id, ai});
    }
    curve.push_back({t, metrics(confusion(preds, corpus))});
  }
  return curve;
}

ordered_json to_json(const Verdict& v) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["sample_id"] = v.sample_id;
  j["label"] = to_string(v.label);
  j["final_score"] = v.final_score.to_string();
  j["decision_path"] = to_string(v.decision_path);
  ordered_json comps = ordered_json::object();
  for (const auto& [id, s] : v.component_scores) comps[id] = s.to_string();
  j["component_scores"] = comps;
  if (v.aggregate)
    j["aggregate"] = {{"weighted_sum", int128_to_string(v.aggregate->weighted_sum)},
                      {"weight_sum", int128_to_string(v.aggregate->weight_sum)}};
  return j;
}

Verdict verdict_from_json(const json& j) {
  if (!j.is_object()) throw DataError("verdict is not a JSON object");
  try {
    if (j.at("schema").get<int>() != kSchemaVersion) throw DataError("unsupported verdict schema");
    Verdict v;
    v.sample_id = j.at("sample_id").get<std::string>();
    const auto label = parse_label(j.at("label").get<std::string>());
    if (!label || *label == ProvenanceLabel::Unknown) throw DataError("verdict label must be ai or human");
    v.label = *label;
    v.final_score = decimal_from_json(j.at("final_score"), "final_score");
    const auto path = parse_decision_path(j.at("decision_path").get<std::string>());
    if (!path) throw DataError("unknown decision_path");
    v.decision_path = *path;
    for (const auto& [id, s] : j.at("component_scores").items())
      v.component_scores[id] = decimal_from_json(s, "component score " + id);
    if (j.contains("aggregate")) {
      AggregateScore a;
      a.weighted_sum = parse_int128(j["aggregate"].at("weighted_sum").get<std::string>());
      a.weight_sum = parse_int128(j["aggregate"].at("weight_sum").get<std::string>());
      if (a.weight_sum <= 0) throw DataError("aggregate weight_sum must be positive");
      v.aggregate = a;
    }
    if (v.sample_id.empty()) throw DataError("verdict sample_id is empty");
    return v;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed verdict: ") + e.what());
  }
}

std::size_t write_verdicts(std::span<const Verdict> verdicts, std::ostream& out) {
  for (const auto& v : verdicts) out << dump_line(to_json(v)) << '\n';
  return verdicts.size();
}

ReadResult<Verdict> read_verdicts(std::istream& in) {
  ReadResult<Verdict> r;
  std::set<std::string> seen;
  for_each_line(in, [&](std::size_t line, const std::string& text, bool) {
    try {
      Verdict v = verdict_from_json(json::parse(text));
      if (!seen.insert(v.sample_id).second) throw DataError("duplicate verdict for '" + v.sample_id + "'");
      r.records.push_back(std::move(v));
    } catch (const std::exception& e) {
      r.diagnostics.push_back({line, e.what()});
    }
  });
  return r;
}

}  // namespace codeprov
