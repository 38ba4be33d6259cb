#include "codeprov/decimal.hpp"

#include <cmath>
#include <cstdio>

namespace codeprov {

Decimal Decimal::from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite decimal value");
  return from_ticks(std::llround(v * static_cast<double>(kScale)));
}

Decimal Decimal::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty decimal");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    ++i;
  }
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool round_up = false;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("malformed decimal: " + std::string(text));
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("malformed decimal: " + std::string(text));
    seen_digit = true;
    if (!seen_point) {
      if (whole > 9'000'000) throw std::out_of_range("decimal out of range: " + std::string(text));
      whole = whole * 10 + (c - '0');
    } else if (frac_digits < kDigits) {
      frac = frac * 10 + (c - '0');
      ++frac_digits;
    } else if (frac_digits == kDigits) {
      round_up = c >= '5';
      ++frac_digits;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal: " + std::string(text));
  for (int d = std::min(frac_digits, kDigits); d < kDigits; ++d) frac *= 10;
  std::int64_t ticks = whole * kScale + frac + (round_up ? 1 : 0);
  return from_ticks(negative ? -ticks : ticks);
}

std::string Decimal::to_string() const {
  std::int64_t t = ticks_;
  std::string out;
  if (t < 0) {
    out.push_back('-');
    t = -t;
  }
  out += std::to_string(t / kScale);
  std::int64_t frac = t % kScale;
  if (frac != 0) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%012lld", static_cast<long long>(frac));
    std::string digits(buf);
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

Fraction::Fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

std::string Fraction::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string format_metric(const Metric& m, int digits) {
  if (!m) return "undefined";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, m->to_double());
  return buf;
}

}  // namespace codeprov
