#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "codeprov/cascade.hpp"
#include "codeprov/detectors.hpp"
#include "codeprov/records.hpp"

namespace codeprov {

/// An ensemble config file plus the detector definitions it carries.
///
///   {"master": "ngram", "auxiliaries": ["entropy", "style", "ext"],
///    "tau1": "0.9", "tau2": "0.53", "mode": "full", "seed": 7,
///    "detectors": [
///      {"id": "ngram", "kind": "ngram", "order": 4, "train": "ai.jsonl"},
///      {"id": "entropy", "kind": "entropy", "calibrate": "ai.jsonl"},
///      {"id": "style", "kind": "style", "train": "labeled.jsonl"},
///      {"id": "fixed", "kind": "constant", "value": "0.5"},
///      {"id": "remote", "kind": "subprocess", "command": ["./score.sh"]},
///      {"id": "ext", "kind": "external"}]}
///
/// Ensemble members without a definition are external: their scores come
/// from a score file. Relative paths resolve against the config file.
struct PipelineConfig {
  EnsembleConfig ensemble;
  nlohmann::json detectors = nlohmann::json::array();
  std::filesystem::path base_dir;
  std::uint64_t seed = 0;
};

PipelineConfig pipeline_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Reads a sample file; malformed lines throw DataError naming file and line.
std::vector<CodeSample> load_samples(const std::filesystem::path& path);

/// Instantiates every ensemble member. `samples` is what subprocess scorers
/// are run on; `scores` feeds external members.
DetectorSet build_detectors(const PipelineConfig& config, std::span<const CodeSample> samples,
                            std::span<const ExternalScore> scores);

}  // namespace codeprov
