#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "codeprov/data_model.hpp"
#include "codeprov/decimal.hpp"
#include "codeprov/metrics.hpp"
#include "codeprov/records.hpp"

namespace codeprov {

/// One detector's confidence that a sample is AI-generated, in [0, 1].
struct DetectorScore {
  std::string detector_id;
  Decimal score;
  std::map<std::string, double> aux;  // e.g. raw perplexity

  friend bool operator==(const DetectorScore&, const DetectorScore&) = default;
};

/// Base detector contract: deterministic for fixed state, score in [0, 1].
/// Implementations throw DetectorError (or MissingScore) on failure.
class Detector {
 public:
  virtual ~Detector() = default;
  virtual const std::string& id() const = 0;
  virtual DetectorScore score(const CodeSample& sample) const = 0;
};

using DetectorPtr = std::shared_ptr<const Detector>;

/// Detectors keyed by id.
class DetectorSet {
 public:
  DetectorSet() = default;
  DetectorSet(std::initializer_list<DetectorPtr> detectors);

  void add(DetectorPtr detector);
  bool contains(const std::string& id) const { return by_id_.contains(id); }
  /// Throws DataError for unknown ids.
  const Detector& at(const std::string& id) const;
  /// Ids in insertion order.
  const std::vector<std::string>& ids() const { return order_; }

 private:
  std::unordered_map<std::string, DetectorPtr> by_id_;
  std::vector<std::string> order_;
};

/// Returns `value` for every sample.
class ConstantDetector final : public Detector {
 public:
  ConstantDetector(std::string id, Decimal value);
  const std::string& id() const override { return id_; }
  DetectorScore score(const CodeSample& sample) const override;

 private:
  std::string id_;
  Decimal value_;
};

/// Wraps a callable; mostly for synthetic detectors in experiments.
class FunctionDetector final : public Detector {
 public:
  using Fn = std::function<Decimal(const CodeSample&)>;
  FunctionDetector(std::string id, Fn fn) : id_(std::move(id)), fn_(std::move(fn)) {}
  const std::string& id() const override { return id_; }
  DetectorScore score(const CodeSample& sample) const override;

 private:
  std::string id_;
  Fn fn_;
};

/// Scores produced outside this tool (the unavailable baseline models),
/// looked up by sample id. Unlisted samples raise MissingScore.
class ExternalScoreDetector final : public Detector {
 public:
  ExternalScoreDetector(std::string id, std::unordered_map<std::string, Decimal> scores);
  const std::string& id() const override { return id_; }
  DetectorScore score(const CodeSample& sample) const override;
  std::size_t size() const { return scores_.size(); }

 private:
  std::string id_;
  std::unordered_map<std::string, Decimal> scores_;
};

/// One line of an external score file: {"sample_id", "detector_id", "score"}.
struct ExternalScore {
  std::string sample_id;
  std::string detector_id;
  Decimal score;
};

/// Parses an external score JSON Lines file. Out-of-range scores and
/// malformed lines become diagnostics; a repeated (sample, detector) pair
/// keeps the first value and reports the rest.
ReadResult<ExternalScore> read_external_scores(std::istream& in);

/// Groups external scores into one detector per detector id.
std::map<std::string, std::shared_ptr<ExternalScoreDetector>> external_detectors(
    std::span<const ExternalScore> scores);

/// Subprocess protocol: the command receives one sample id per stdin line and
/// must print one decimal score per line, in order, and exit 0.
std::shared_ptr<ExternalScoreDetector> run_subprocess_detector(std::string id,
                                                               const std::vector<std::string>& command,
                                                               std::span<const CodeSample> samples);

// ---------------------------------------------------------------------------
// Profiling

enum class DetectorGroup { HighPrecision, HighRecall, Excluded };

std::string_view to_string(DetectorGroup g);

struct DetectorProfile {
  std::string detector_id;
  MetricsReport metrics;
  DetectorGroup group = DetectorGroup::Excluded;
};

inline const Decimal kProfileThreshold = Decimal::from_ticks(Decimal::kScale / 2);
/// Detectors with F1 below this (or undefined) are excluded from the ensemble.
inline const Fraction kExclusionF1{1, 5};

/// Excluded if F1 is undefined or < 0.2; otherwise HighPrecision when
/// precision >= recall, else HighRecall. Pure function of the counts.
DetectorGroup assign_group(const MetricsReport& m);

/// Scores every sample with every detector, thresholds at 0.5 (score >= 0.5
/// is AI) and groups the detectors. The corpus must contain both labels.
std::vector<DetectorProfile> profile_detectors(const DetectorSet& detectors, std::span<const CodeSample> corpus);

/// Standard logistic function.
double logistic(double x);

}  // namespace codeprov
