#pragma once

// Exact and high-precision arithmetic shared by the threshold checkers.
//
// Inputs such as eps are rationals; every inequality that only involves
// rationals and integers is decided exactly.  Thresholds that involve log n
// are evaluated in 100-digit binary floating point, which is far beyond the
// resolution needed to separate an irrational threshold from an integer.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace bipack {

using Real = boost::multiprecision::cpp_bin_float_100;
using ExactRational = boost::multiprecision::cpp_rational;
using Wide = __int128;

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  // Accepts "p/q", "123", "0.25", "-1.5".  Decimals are converted exactly.
  static Rational parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("cannot parse rational: '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      const auto p = parse_integer(text.substr(0, slash));
      const auto q = parse_integer(text.substr(slash + 1));
      if (!p || !q || *q == 0) fail();
      return Rational(*p, *q);
    }
    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    const std::string_view whole = body.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (whole.empty() && frac.empty()) fail();
    if (frac.size() > 17) fail();
    std::int64_t num = 0;
    std::int64_t den = 1;
    for (char ch : whole) {
      if (ch < '0' || ch > '9') fail();
      if (num > (INT64_MAX - 9) / 10) fail();
      num = num * 10 + (ch - '0');
    }
    for (char ch : frac) {
      if (ch < '0' || ch > '9') fail();
      if (num > (INT64_MAX - 9) / 10) fail();
      num = num * 10 + (ch - '0');
      den *= 10;
    }
    return Rational(negative ? -num : num, den);
  }

  [[nodiscard]] std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] std::int64_t den() const noexcept { return den_; }

  [[nodiscard]] long double to_long_double() const noexcept {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }
  [[nodiscard]] double to_double() const noexcept { return static_cast<double>(to_long_double()); }
  [[nodiscard]] Real to_real() const { return Real(num_) / Real(den_); }
  [[nodiscard]] ExactRational to_exact() const { return ExactRational(num_, den_); }

  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend auto operator<=>(const Rational& lhs, const Rational& rhs) {
    return Wide{lhs.num_} * rhs.den_ <=> Wide{rhs.num_} * lhs.den_;
  }

  friend Rational operator/(const Rational& r, std::int64_t k) { return Rational(r.num_, r.den_ * k); }

 private:
  static std::optional<std::int64_t> parse_integer(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;
    std::int64_t v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') return std::nullopt;
      if (v > (INT64_MAX - 9) / 10) return std::nullopt;
      v = v * 10 + (ch - '0');
    }
    return negative ? -v : v;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Logarithm base.  nullopt means natural log, which is the default reading
// of an unqualified "log n".
using LogBase = std::optional<Rational>;

inline Real log_of(std::int64_t n, const LogBase& base = std::nullopt) {
  const Real ln_n = boost::multiprecision::log(Real(n));
  if (!base) return ln_n;
  if (*base <= Rational(1)) throw std::invalid_argument("log base must exceed 1");
  return ln_n / boost::multiprecision::log(base->to_real());
}

}  // namespace bipack
