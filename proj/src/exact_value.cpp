#include "misembed/exact_value.hpp"

#include "misembed/errors.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

namespace misembed {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto *first = text.data();
  const auto *last = text.data() + text.size();
  if (first != last && *first == '+')
    ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last)
    throw ParseError("rational", "cannot parse '" + std::string(whole) + "'");
  return value;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (d == 0)
    throw StructuralError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos)
    return {parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text)};
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 15)
      throw ParseError("rational", "too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
      scale *= 10;
    const auto int_part = text.substr(0, dot);
    const bool negative = !int_part.empty() && int_part.front() == '-';
    const std::int64_t ip = (int_part.empty() || int_part == "-" || int_part == "+") ? 0 : parse_int(int_part, text);
    const std::int64_t fp = frac.empty() ? 0 : parse_int(frac, text);
    const std::int64_t magnitude = (ip < 0 ? -ip : ip) * scale + fp;
    return {negative ? -magnitude : magnitude, scale};
  }
  return {parse_int(text, text), 1};
}

std::string Rational::str() const {
  if (den == 1)
    return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  return lhs <=> rhs;
}

Rational operator+(const Rational &a, const Rational &b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(const Rational &a, const Rational &b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rational operator*(const Rational &a, const Rational &b) { return {a.num * b.num, a.den * b.den}; }
Rational operator/(const Rational &a, const Rational &b) { return {a.num * b.den, a.den * b.num}; }

Rational ExactValue::evaluate(const Rational &w) const { return Rational(half_, 2) + Rational(w_) * w; }

std::string ExactValue::str() const {
  std::string out;
  if (half_ != 0 || w_ == 0)
    out = Rational(half_, 2).str();
  if (w_ != 0) {
    if (!out.empty() || w_ < 0)
      out += (w_ < 0 ? "-" : "+");
    const auto mag = w_ < 0 ? -w_ : w_;
    if (mag != 1)
      out += std::to_string(mag);
    out += "w";
  }
  return out;
}

std::strong_ordering compare_at(const ExactValue &a, const ExactValue &b, const Rational &w) {
  return a.scaled(w) <=> b.scaled(w);
}

double distance_to_half_integer(double value) {
  const double twice = 2.0 * value;
  return std::abs(twice - std::round(twice)) / 2.0;
}

} // namespace misembed
