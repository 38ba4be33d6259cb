#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace codeprov {

/// Fixed-point decimal with twelve fractional digits.
///
/// Detector scores, ensemble thresholds and weights all live on this grid so
/// that threshold decisions (0.52999 vs 0.53) are platform-stable.
class Decimal {
 public:
  static constexpr int kDigits = 12;
  static constexpr std::int64_t kScale = 1'000'000'000'000;

  constexpr Decimal() = default;

  static constexpr Decimal from_ticks(std::int64_t ticks) {
    Decimal d;
    d.ticks_ = ticks;
    return d;
  }
  static constexpr Decimal from_int(std::int64_t v) { return from_ticks(v * kScale); }

  /// Rounds half away from zero onto the 1e-12 grid.
  static Decimal from_double(double v);

  /// Exact parse of "[-]digits[.digits]"; more than twelve fractional digits
  /// are rounded half away from zero. Throws std::invalid_argument.
  static Decimal parse(std::string_view text);

  constexpr std::int64_t ticks() const { return ticks_; }
  double to_double() const { return static_cast<double>(ticks_) / static_cast<double>(kScale); }

  /// Shortest exact decimal rendering, e.g. "0.53", "2", "-0.000001".
  std::string to_string() const;

  friend constexpr auto operator<=>(Decimal, Decimal) = default;
  friend constexpr Decimal operator+(Decimal a, Decimal b) { return from_ticks(a.ticks_ + b.ticks_); }
  friend constexpr Decimal operator-(Decimal a, Decimal b) { return from_ticks(a.ticks_ - b.ticks_); }

 private:
  std::int64_t ticks_ = 0;
};

using int128 = __int128;

std::string int128_to_string(int128 v);

/// Exact rational with 64-bit terms, always reduced, positive denominator.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "n/d" (or "n" when d == 1).
  std::string to_string() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return static_cast<int128>(a.num_) * b.den_ <=> static_cast<int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A ratio whose denominator may be zero; nullopt marks an undefined metric.
using Metric = std::optional<Fraction>;

inline Metric ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return Fraction(num, den);
}

/// Renders a metric for reports: "undefined" or a decimal with `digits` places.
std::string format_metric(const Metric& m, int digits = 6);

}  // namespace codeprov
