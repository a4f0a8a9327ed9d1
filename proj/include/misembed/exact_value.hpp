#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace misembed {

/// Reduced fraction with a positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  /// Accepts "a/b", integers and finite decimals ("0.125").
  static Rational parse(std::string_view text);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational &, const Rational &) = default;
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a, const Rational &b);
  friend Rational operator*(const Rational &a, const Rational &b);
  friend Rational operator/(const Rational &a, const Rational &b);
};

/// Element of the lattice {a/2 + b*w : a, b integers}: weights and energies
/// that stay exact for every value of the weight bias w.
///
/// Arithmetic is closed and exact. Numeric order only exists once w is fixed;
/// `compare_at` performs that comparison with integer arithmetic for a
/// rational w. The defaulted `<=>` is the lexicographic (a, b) order used for
/// container keys and carries no numeric meaning.
class ExactValue {
public:
  constexpr ExactValue() = default;
  constexpr ExactValue(std::int64_t half_units, std::int64_t w_units)
      : half_(half_units), w_(w_units) {}

  static constexpr ExactValue integer(std::int64_t k) { return {2 * k, 0}; }
  static constexpr ExactValue half() { return {1, 0}; }
  static constexpr ExactValue bias() { return {0, 1}; }

  constexpr std::int64_t half_units() const { return half_; }
  constexpr std::int64_t w_units() const { return w_; }

  double evaluate(double w) const { return 0.5 * static_cast<double>(half_) + static_cast<double>(w_) * w; }
  Rational evaluate(const Rational &w) const;

  /// Value times 2*w.den, an exact integer for rational w.
  std::int64_t scaled(const Rational &w) const { return half_ * w.den + 2 * w_ * w.num; }

  constexpr ExactValue operator-() const { return {-half_, -w_}; }
  constexpr ExactValue &operator+=(const ExactValue &o) {
    half_ += o.half_;
    w_ += o.w_;
    return *this;
  }
  constexpr ExactValue &operator-=(const ExactValue &o) {
    half_ -= o.half_;
    w_ -= o.w_;
    return *this;
  }
  friend constexpr ExactValue operator+(ExactValue a, const ExactValue &b) { return a += b; }
  friend constexpr ExactValue operator-(ExactValue a, const ExactValue &b) { return a -= b; }
  friend constexpr ExactValue operator*(std::int64_t k, const ExactValue &v) { return {k * v.half_, k * v.w_}; }
  friend constexpr ExactValue operator*(const ExactValue &v, std::int64_t k) { return k * v; }

  friend constexpr bool operator==(const ExactValue &, const ExactValue &) = default;
  friend constexpr auto operator<=>(const ExactValue &, const ExactValue &) = default;

  /// Human-readable form, e.g. "3/2+w", "1/2-3w", "0".
  std::string str() const;

private:
  std::int64_t half_ = 0;
  std::int64_t w_ = 0;
};

/// Numeric comparison of two lattice values at a fixed rational bias.
std::strong_ordering compare_at(const ExactValue &a, const ExactValue &b, const Rational &w);

/// Distance from an evaluated value to the nearest multiple of 1/2.
double distance_to_half_integer(double value);

} // namespace misembed

template <> struct std::hash<misembed::ExactValue> {
  std::size_t operator()(const misembed::ExactValue &v) const noexcept {
    return std::hash<std::int64_t>{}(v.half_units() * 1000003 + v.w_units());
  }
};
