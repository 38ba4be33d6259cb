#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "codeprov/decimal.hpp"
#include "codeprov/detectors.hpp"
#include "codeprov/metrics.hpp"
#include "codeprov/records.hpp"

namespace codeprov {

enum class EnsembleMode { Full, NoStage1, NoStage2 };

std::string_view to_string(EnsembleMode m);  // "full", "no-stage1", "no-stage2"
std::optional<EnsembleMode> parse_mode(std::string_view s);

inline constexpr Decimal kDefaultTau1 = Decimal::from_ticks(900'000'000'000);
inline constexpr Decimal kDefaultTau2 = Decimal::from_ticks(530'000'000'000);
inline constexpr Decimal kMasterWeight = Decimal::from_int(2);
inline constexpr Decimal kAuxWeight = Decimal::from_int(1);

struct EnsembleConfig {
  std::string master_id;
  std::vector<std::string> aux_ids;
  Decimal tau1 = kDefaultTau1;
  Decimal tau2 = kDefaultTau2;
  EnsembleMode mode = EnsembleMode::Full;
  /// Overrides; ids not listed get 2 (master) or 1 (auxiliary).
  std::map<std::string, Decimal> weights;

  Decimal weight_of(const std::string& id) const;
  /// Throws DataError on a broken invariant.
  void validate() const;

  friend bool operator==(const EnsembleConfig&, const EnsembleConfig&) = default;
};

/// Reads {"master", "auxiliaries", "tau1"?, "tau2"?, "mode"?, "weights"?}.
/// Unknown keys are ignored so detector definitions can share the file.
EnsembleConfig ensemble_config_from_json(const nlohmann::json& j);
ordered_json to_json(const EnsembleConfig& c);

enum class DecisionPath {
  Stage1Exit,
  Stage2Aggregate,
  /// NoStage2 mode, master at or below tau1: labeled Human without aggregation.
  Stage1Fallthrough,
};

std::string_view to_string(DecisionPath p);
std::optional<DecisionPath> parse_decision_path(std::string_view s);

/// Weighted aggregate kept as an exact ratio: weighted_sum is on the
/// 1e-24 grid (score ticks times weight ticks), weight_sum on 1e-12.
struct AggregateScore {
  int128 weighted_sum = 0;
  int128 weight_sum = 0;

  bool at_least(Decimal threshold) const {
    return weighted_sum >= static_cast<int128>(threshold.ticks()) * weight_sum;
  }
  /// Floor onto the 1e-12 grid, which preserves every comparison against a
  /// grid threshold.
  Decimal floor() const { return Decimal::from_ticks(static_cast<std::int64_t>(weighted_sum / weight_sum)); }

  friend bool operator==(const AggregateScore&, const AggregateScore&) = default;
};

struct Verdict {
  std::string sample_id;
  ProvenanceLabel label = ProvenanceLabel::Human;
  Decimal final_score;
  DecisionPath decision_path = DecisionPath::Stage2Aggregate;
  std::map<std::string, Decimal> component_scores;
  std::optional<AggregateScore> aggregate;  // Stage2Aggregate only

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Runs the cascade on one sample. Detector failures surface as
/// DetectorError carrying the detector id.
Verdict classify(const EnsembleConfig& config, const DetectorSet& detectors, const CodeSample& sample);

struct SampleFailure {
  std::size_t index = 0;
  std::string sample_id;
  std::string detector_id;  // empty when the failure is not detector-specific
  std::string message;
};

struct BatchResult {
  /// One slot per input sample, in input order; empty where the sample failed.
  std::vector<std::optional<Verdict>> verdicts;
  std::vector<SampleFailure> failures;

  std::vector<Verdict> successful() const;
};

BatchResult classify_batch(const EnsembleConfig& config, const DetectorSet& detectors,
                           std::span<const CodeSample> samples, unsigned workers = 1);

struct SweepPoint {
  Decimal tau2;
  MetricsReport report;
};

/// Full-mode metrics for each tau2 in `grid`. Scores are computed once.
/// Throws DataError for an empty grid, values outside [0, 1], a single-class
/// corpus, or any sample failure.
std::vector<SweepPoint> threshold_sweep(const EnsembleConfig& config, const DetectorSet& detectors,
                                        std::span<const CodeSample> corpus, std::span<const Decimal> grid);

ordered_json to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);
std::size_t write_verdicts(std::span<const Verdict> verdicts, std::ostream& out);
ReadResult<Verdict> read_verdicts(std::istream& in);

}  // namespace codeprov
