#pragma once

#include <stdexcept>
#include <string>

namespace codeprov {

/// Bad input data: malformed files, invariant violations, missing inputs.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A detector could not produce a score for a sample.
class DetectorError : public DataError {
 public:
  DetectorError(std::string detector_id, const std::string& message)
      : DataError(detector_id + ": " + message), detector_id_(std::move(detector_id)) {}
  const std::string& detector_id() const { return detector_id_; }

 private:
  std::string detector_id_;
};

/// External score table has no entry for the requested sample.
class MissingScore : public DetectorError {
 public:
  MissingScore(std::string detector_id, const std::string& sample_id)
      : DetectorError(std::move(detector_id), "no score for sample '" + sample_id + "'") {}
};

/// Human-subset window extends past the end of 2010.
class PurityViolation : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace codeprov
