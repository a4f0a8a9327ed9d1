#pragma once

#include "misembed/crossing_lattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace misembed {

/// Generalized independence polynomial: exponents on the a/2 + b*w lattice,
/// non-negative arbitrary-precision coefficients. Exponents are kept
/// symbolic in w; `collapsed` merges terms that coincide numerically once w
/// is fixed.
class GeneralizedPolynomial {
public:
  using Terms = std::map<ExactValue, BigInt>;

  GeneralizedPolynomial() = default;
  static GeneralizedPolynomial one() { return monomial(ExactValue()); }
  static GeneralizedPolynomial monomial(const ExactValue &exponent, const BigInt &coefficient = 1);
  /// 1 + x^e.
  static GeneralizedPolynomial binomial(const ExactValue &exponent);

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  BigInt coefficient(const ExactValue &exponent) const;
  BigInt coefficient_sum() const;

  void add_term(const ExactValue &exponent, const BigInt &coefficient);
  /// Multiplication by x^e.
  GeneralizedPolynomial shifted(const ExactValue &exponent) const;
  GeneralizedPolynomial pow(std::size_t k) const;

  /// Terms merged by numeric exponent at w, ascending.
  std::vector<std::pair<Rational, BigInt>> collapsed(const Rational &w) const;
  /// Largest numeric exponent at w; the polynomial must be non-zero.
  Rational degree(const Rational &w) const;

  GeneralizedPolynomial &operator+=(const GeneralizedPolynomial &o);
  /// Throws InvariantViolation if a coefficient would turn negative.
  GeneralizedPolynomial &operator-=(const GeneralizedPolynomial &o);
  GeneralizedPolynomial &operator*=(const GeneralizedPolynomial &o);
  friend GeneralizedPolynomial operator+(GeneralizedPolynomial a, const GeneralizedPolynomial &b) { return a += b; }
  friend GeneralizedPolynomial operator-(GeneralizedPolynomial a, const GeneralizedPolynomial &b) { return a -= b; }
  friend GeneralizedPolynomial operator*(const GeneralizedPolynomial &a, const GeneralizedPolynomial &b);

  friend bool operator==(const GeneralizedPolynomial &, const GeneralizedPolynomial &) = default;

  /// Human-readable form, e.g. "1 + 2x^(1/2+w)".
  std::string str() const;

private:
  Terms terms_;
};

/// Every coefficient of `a` is at most the matching coefficient of `b`.
bool coefficientwise_leq(const GeneralizedPolynomial &a, const GeneralizedPolynomial &b);

/// Sum over IS(g) of x^{W(S)}, by listing every independent set.
GeneralizedPolynomial ip_bruteforce(const WeightedGraph &g, std::uint64_t state_budget = 200'000'000);
/// Same polynomial by vertex branching with component factorization and a
/// closed path/cycle base case; handles hosts far beyond listing range.
GeneralizedPolynomial independence_polynomial(const WeightedGraph &g);

/// Unweighted path P_n: coefficients C(n - k + 1, k).
GeneralizedPolynomial ip_path(std::size_t n);
/// Unweighted path by I(P_n) = I(P_{n-1}) + x I(P_{n-2}).
GeneralizedPolynomial ip_path_recurrence(std::size_t n);
/// P_{2N} with the W_w profile, by the three-term recurrence in unweighted
/// paths for N >= 2 and brute force below.
GeneralizedPolynomial ip_weighted_path(std::size_t n_half);

/// A_{N,+-} = (1 + x^{1/2 +- w}) (1 + x)^N: subsets of an antiferromagnetic
/// chain pattern.
GeneralizedPolynomial a_poly(std::size_t n, int sign);

enum class LowerBoundVariant { NonPlanar, GadgetFactors };

/// Lower bound on the crossing-lattice polynomial: each selected chain
/// contributes IP(P_{2N+2}) - A_{N,-}, each unselected chain A_{N,-}, summed
/// over IS(G). GadgetFactors multiplies by (1+x)^{|E|} (1+x^2)^{N(N-1)/2-|E|}.
GeneralizedPolynomial cl_lower_bound(const WeightedGraph &g, LowerBoundVariant variant);

/// Z(beta) = sum c * exp(-beta * e(w)).
double evaluate_partition(const GeneralizedPolynomial &p, double beta, double w);

/// [{"half", "w", "count"}] with count as a decimal string, sorted by the
/// exponent evaluated at w (lattice order breaks numeric ties).
nlohmann::json polynomial_to_json(const GeneralizedPolynomial &p, const Rational &w);
GeneralizedPolynomial polynomial_from_json(const nlohmann::json &j);

} // namespace misembed
