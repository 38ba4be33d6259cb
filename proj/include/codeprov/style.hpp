#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "codeprov/detectors.hpp"
#include "codeprov/lexical.hpp"

namespace codeprov {

/// Shannon entropy (bits) of the token distribution. Tokens are maximal
/// identifier/number runs and single punctuation characters.
double token_entropy(std::string_view content);

struct LogisticCalibration {
  double midpoint = 0.0;
  double slope = 1.0;
};

inline constexpr LogisticCalibration kDefaultEntropyCalibration{6.0, 2.0};
inline constexpr double kEntropySlope = 2.0;

/// logistic((midpoint - entropy) * slope): low token entropy reads as AI.
/// Empty content scores 0.5 with aux "empty_content" = 1.
DetectorScore entropy_score(const CodeSample& sample, const LogisticCalibration& cal = kDefaultEntropyCalibration,
                            const std::string& detector_id = "entropy");

/// Midpoint = median token entropy over non-empty AI-labeled samples.
LogisticCalibration calibrate_entropy(std::span<const CodeSample> ai_corpus);

class EntropyDetector final : public Detector {
 public:
  explicit EntropyDetector(std::string id, LogisticCalibration cal = kDefaultEntropyCalibration)
      : id_(std::move(id)), cal_(cal) {}
  const std::string& id() const override { return id_; }
  DetectorScore score(const CodeSample& sample) const override { return entropy_score(sample, cal_, id_); }

 private:
  std::string id_;
  LogisticCalibration cal_;
};

// ---------------------------------------------------------------------------

inline constexpr std::size_t kStyleFeatureCount = 6;
inline constexpr std::array<std::string_view, kStyleFeatureCount> kStyleFeatureNames = {
    "lcs", "mean_line_length", "sd_line_length", "comment_ratio", "identifier_length_entropy", "blank_line_ratio"};

Eigen::VectorXd style_features(const CodeSample& sample, const LcsRules& rules = LcsRules::defaults());

struct LogisticTrainOptions {
  int epochs = 500;
  double learning_rate = 0.5;
  std::uint64_t seed = 0;
  double init_scale = 0.01;
};

/// Logistic regression over standardized features.
struct LogisticModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  double predict(const Eigen::VectorXd& x) const;
};

/// Full-batch gradient descent on mean log-loss for a fixed number of
/// epochs, from seeded N(0, init_scale^2) weights. Rows of `x` are samples;
/// `y` holds 0/1 targets.
LogisticModel train_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const LogisticTrainOptions& opts = {});

class StyleModel {
 public:
  /// Untrained; scoring throws.
  StyleModel() = default;
  /// All weights zero: every sample scores 0.5.
  static StyleModel zero();
  /// Trains on Human (0) and AI (1) samples; other labels are ignored.
  static StyleModel train(std::span<const CodeSample> corpus, const LogisticTrainOptions& opts = {});

  bool trained() const { return trained_; }
  const LogisticModel& model() const { return model_; }
  double predict(const CodeSample& sample) const;

 private:
  LogisticModel model_;
  bool trained_ = false;
};

/// Throws DetectorError when the model is untrained.
DetectorScore style_score(const StyleModel& model, const CodeSample& sample, const std::string& detector_id = "style");

class StyleDetector final : public Detector {
 public:
  StyleDetector(std::string id, StyleModel model) : id_(std::move(id)), model_(std::move(model)) {}
  const std::string& id() const override { return id_; }
  DetectorScore score(const CodeSample& sample) const override { return style_score(model_, sample, id_); }

 private:
  std::string id_;
  StyleModel model_;
};

}  // namespace codeprov
