#include "codeprov/pipeline.hpp"

#include <fstream>
#include <set>

#include "codeprov/error.hpp"
#include "codeprov/ngram.hpp"
#include "codeprov/style.hpp"

namespace codeprov {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const PipelineConfig& c, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : c.base_dir / path;
}

std::vector<CodeSample> only_ai(std::vector<CodeSample> samples) {
  std::erase_if(samples, [](const CodeSample& s) { return s.label != ProvenanceLabel::AI; });
  return samples;
}

DetectorPtr make_detector(const PipelineConfig& c, const json& d, std::span<const CodeSample> samples) {
  const std::string id = d.at("id").get<std::string>();
  const std::string kind = d.at("kind").get<std::string>();
  if (kind == "constant") return std::make_shared<ConstantDetector>(id, decimal_from_json(d.at("value"), id + " value"));
  if (kind == "ngram") {
    const auto corpus = only_ai(load_samples(resolve(c, d.at("train").get<std::string>())));
    return std::make_shared<NgramDetector>(id, train_ngram(corpus, d.value("order", kDefaultNgramOrder), c.seed));
  }
  if (kind == "entropy") {
    LogisticCalibration cal = kDefaultEntropyCalibration;
    if (d.contains("calibrate")) cal = calibrate_entropy(only_ai(load_samples(resolve(c, d["calibrate"].get<std::string>()))));
    if (d.contains("midpoint")) cal.midpoint = d["midpoint"].get<double>();
    if (d.contains("slope")) cal.slope = d["slope"].get<double>();
    return std::make_shared<EntropyDetector>(id, cal);
  }
  if (kind == "style") {
    if (!d.contains("train")) return std::make_shared<StyleDetector>(id, StyleModel::zero());
    LogisticTrainOptions opts;
    opts.seed = c.seed;
    opts.epochs = d.value("epochs", opts.epochs);
    opts.learning_rate = d.value("learning_rate", opts.learning_rate);
    return std::make_shared<StyleDetector>(id, StyleModel::train(load_samples(resolve(c, d["train"].get<std::string>())), opts));
  }
  if (kind == "subprocess") {
    std::vector<std::string> cmd = d.at("command").get<std::vector<std::string>>();
    if (cmd.empty()) throw DataError("detector '" + id + "': empty command");
    if (cmd[0].find('/') != std::string::npos && std::filesystem::path(cmd[0]).is_relative())
      cmd[0] = (c.base_dir / cmd[0]).string();
    return run_subprocess_detector(id, cmd, samples);
  }
  throw DataError("detector '" + id + "': unknown kind '" + kind + "'");
}

}  // namespace

PipelineConfig pipeline_config_from_json(const json& j, const std::filesystem::path& base_dir) {
  PipelineConfig c;
  c.ensemble = ensemble_config_from_json(j);
  c.base_dir = base_dir;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw DataError("config seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("detectors")) {
    if (!j["detectors"].is_array()) throw DataError("config 'detectors' must be an array");
    c.detectors = j["detectors"];
    std::set<std::string> ids;
    for (const auto& d : c.detectors) {
      if (!d.is_object() || !d.contains("id") || !d["id"].is_string() || !d.contains("kind") || !d["kind"].is_string())
        throw DataError("each detector needs string 'id' and 'kind'");
      if (!ids.insert(d["id"].get<std::string>()).second)
        throw DataError("detector '" + d["id"].get<std::string>() + "' defined twice");
    }
  }
  return c;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return pipeline_config_from_json(j, path.parent_path());
}

std::vector<CodeSample> load_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  auto r = read_records<CodeSample>(in);
  if (!r.diagnostics.empty())
    throw DataError(path.string() + ":" + std::to_string(r.diagnostics.front().line) + ": " +
                    r.diagnostics.front().message);
  return std::move(r.records);
}

DetectorSet build_detectors(const PipelineConfig& config, std::span<const CodeSample> samples,
                            std::span<const ExternalScore> scores) {
  std::vector<std::string> members = {config.ensemble.master_id};
  members.insert(members.end(), config.ensemble.aux_ids.begin(), config.ensemble.aux_ids.end());
  auto externals = external_detectors(scores);
  DetectorSet set;
  for (const auto& id : members) {
    const json* def = nullptr;
    for (const auto& d : config.detectors)
      if (d["id"] == id) def = &d;
    try {
      if (def && (*def)["kind"] != "external") {
        set.add(make_detector(config, *def, samples));
        continue;
      }
    } catch (const json::exception& e) {
      throw DataError("detector '" + id + "': " + e.what());
    }
    auto it = externals.find(id);
    if (it == externals.end()) throw DataError("no scores given for external detector '" + id + "'");
    set.add(it->second);
  }
  return set;
}

}  // namespace codeprov
