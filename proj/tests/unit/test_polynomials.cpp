#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "misembed/errors.hpp"
#include "misembed/polynomials.hpp"
#include "misembed/random_graph.hpp"

#include <bit>
#include <cmath>

using namespace misembed;

namespace {

using GP = GeneralizedPolynomial;

GP x(std::int64_t half, std::int64_t w, BigInt c = 1) { return GP::monomial(ExactValue(half, w), c); }

/// Literal 2^n scan over subsets of P_n, counting independent ones by size.
GP path_by_masks(std::size_t n) {
  GP p;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
    if ((mask & (mask >> 1)) == 0)
      p.add_term(ExactValue::integer(std::popcount(mask)), 1);
  return p;
}

/// Stars and bars: k selected vertices on P_n leave k + 1 gaps summing to
/// n - k, the inner ones non-empty. Gap vectors are enumerated directly; the
/// last gap absorbs the remainder.
std::uint64_t gap_vectors(std::size_t index, std::size_t k, std::size_t remaining) {
  if (index == k)
    return 1;
  std::uint64_t total = 0;
  for (std::size_t g = index == 0 ? 0 : 1; g <= remaining; ++g)
    total += gap_vectors(index + 1, k, remaining - g);
  return total;
}

std::uint64_t k_is_count(std::size_t n, std::size_t k) { return k > n ? 0 : gap_vectors(0, k, n - k); }

} // namespace

TEST_CASE("basic products and JSON") {
  CHECK(ip_bruteforce(path_graph(1)) == GP::one() + x(2, 0));
  CHECK(ip_bruteforce(complete_graph(3)) == GP::one() + x(2, 0, 3));
  CHECK((GP::binomial(ExactValue(1, 1)) * GP::binomial(ExactValue(1, -1))).coefficient(ExactValue::integer(1)) == 1);
  CHECK_THROWS_AS(GP::one() - x(2, 0), InvariantViolation);
  CHECK(GP::binomial(ExactValue::integer(1)).pow(4) == ip_bruteforce(edgeless_graph(4)));

  const auto p = ip_weighted_path(3);
  const auto j = polynomial_to_json(p, Rational(1, 8));
  CHECK(polynomial_from_json(j) == p);
  double previous = -1.0;
  for (const auto &t : j) {
    const double e = ExactValue(t["half"], t["w"]).evaluate(0.125);
    CHECK(e >= previous);
    previous = e;
  }
  CHECK(j.front()["count"] == "1");
  auto bad = j;
  bad[0]["count"] = "-3";
  CHECK_THROWS_AS(polynomial_from_json(bad), ParseError);
  bad[0]["count"] = 3;
  CHECK_THROWS_AS(polynomial_from_json(bad), ParseError);
  const BigInt huge("123456789012345678901234567890");
  CHECK(polynomial_from_json(polynomial_to_json(x(4, 1, huge), Rational(1, 8))).coefficient(ExactValue(4, 1)) == huge);
}

TEST_CASE("unweighted path closed form, recurrence and brute force") {
  CHECK(ip_path(0) == GP::one());
  CHECK(ip_path(4) == GP::one() + x(2, 0, 4) + x(4, 0, 3));
  CHECK(ip_path(5) == GP::one() + x(2, 0, 5) + x(4, 0, 6) + x(6, 0, 1));
  CHECK(ip_path(5) == ip_path(4) + ip_path(3).shifted(ExactValue::integer(1)));
  for (std::size_t n = 0; n <= 24; ++n) {
    const auto closed = ip_path(n);
    CHECK(closed == ip_path_recurrence(n));
    CHECK(closed == path_by_masks(n));
    if (n <= 18)
      CHECK(closed == ip_bruteforce(path_graph(n)));
    CHECK(closed == independence_polynomial(path_graph(n)));
    CHECK(closed.coefficient_sum() == count_all_is(path_graph(n)));
  }
}

TEST_CASE("stars and bars counts") {
  for (std::size_t n = 0; n <= 14; ++n) {
    const auto p = ip_path(n);
    for (std::size_t k = 0; k <= n; ++k)
      CHECK(p.coefficient(ExactValue::integer(static_cast<std::int64_t>(k))) == k_is_count(n, k));
  }
}

TEST_CASE("weighted path") {
  const auto p4 = GP::one() + x(1, 1) + x(1, -1) + x(2, 0, 3) + x(3, 1) + x(3, -1);
  CHECK(ip_weighted_path(2) == p4);
  CHECK(ip_bruteforce(build_path_embedding(2, Rational(1, 8)).host) == p4);
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto host = build_path_embedding(n, Rational(1, 8)).host;
    const auto closed = ip_weighted_path(n);
    CHECK(closed == ip_bruteforce(host));
    CHECK(closed == independence_polynomial(host));
    const auto top = ExactValue(2 * static_cast<std::int64_t>(n) - 1, 1);
    CHECK(closed.coefficient(top) == 1);
    for (const auto &w : {Rational(1, 4), Rational(1, 8), Rational(1, 20)}) {
      const auto levels = closed.collapsed(w);
      CHECK(levels.back().first == top.evaluate(w));
      CHECK(levels.back().second == 1);
      if (levels.size() > 1)
        CHECK(levels.back().first - levels[levels.size() - 2].first == Rational(2) * w);
    }
    // The first non-interpretable level, 1/2 + w below the top, holds 2N - 1 states.
    CHECK(closed.coefficient(top - ExactValue(1, 1)) == 2 * n - 1);
  }
}

TEST_CASE("chain subset polynomials") {
  CHECK(a_poly(0, 1) == GP::one() + x(1, 1));
  CHECK(a_poly(1, -1) == GP::one() + x(2, 0) + x(1, -1) + x(3, -1));
  for (std::size_t n = 0; n <= 10; ++n) {
    CHECK(a_poly(n, 1).coefficient_sum() == BigInt(1) << (n + 1));
    CHECK(a_poly(n, -1).coefficient_sum() == BigInt(1) << (n + 1));
    // Every subset of the unselected pattern is independent in the chain.
    CHECK(coefficientwise_leq(a_poly(n, -1), ip_weighted_path(n + 1)));
  }
  CHECK_THROWS_AS(a_poly(2, 0), StructuralError);
}

TEST_CASE("lattice lower bound") {
  CHECK(cl_lower_bound(edgeless_graph(1), LowerBoundVariant::NonPlanar) == ip_weighted_path(2));
  const WeightedGraph star(4, {{0, 1}, {1, 2}, {1, 3}});
  CHECK(cl_lower_bound(star, LowerBoundVariant::GadgetFactors) ==
        cl_lower_bound(star, LowerBoundVariant::NonPlanar) * GP::binomial(ExactValue::integer(1)).pow(3) *
            GP::binomial(ExactValue::integer(2)).pow(3));
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto g = random_gnp(n, 0.5, seed);
      const auto cl = build_nonplanar_cl(g, Rational(1, 8));
      const auto host = independence_polynomial(cl.host);
      CHECK(host.coefficient_sum() == count_all_is(cl.host));
      const auto lb = cl_lower_bound(g, LowerBoundVariant::NonPlanar);
      CHECK(coefficientwise_leq(lb, host));
      const auto mwis = total_weight(cl.host, solve_mwis(cl.host, WeightMode::exact(cl.w)).config);
      CHECK(lb.degree(cl.w) == mwis.evaluate(cl.w));
      CHECK(lb.coefficient(mwis) >= 1);
    }
}

TEST_CASE("branching agrees with listing on lattice hosts") {
  for (std::uint64_t seed = 0; seed < 4; ++seed)
    for (auto v : {Variant::NonPlanar, Variant::Gadgeted}) {
      const auto cl = build_cl(random_gnp(3, 0.5, seed), Rational(1, 8), v);
      CHECK(independence_polynomial(cl.host) == ip_bruteforce(cl.host));
    }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_gnp(14, 0.3, seed);
    CHECK(independence_polynomial(g) == ip_bruteforce(g));
  }
  CHECK(independence_polynomial(cycle_graph(7)) == ip_bruteforce(cycle_graph(7)));
  CHECK_THROWS_AS(ip_bruteforce(path_graph(40), 1000), BudgetExceeded);
}

TEST_CASE("disjoint unions multiply") {
  const auto a = build_path_embedding(2, Rational(1, 8)).host;
  const auto b = build_path_embedding(3, Rational(1, 8)).host;
  CHECK(ip_bruteforce(disjoint_union(a, b)) == ip_bruteforce(a) * ip_bruteforce(b));
  auto product = edgeless_graph(0);
  for (int i = 0; i < 3; ++i)
    product = disjoint_union(product, a);
  CHECK(independence_polynomial(product) == ip_weighted_path(2).pow(3));
}

TEST_CASE("partition function") {
  const auto p4 = ip_path(4);
  CHECK(evaluate_partition(p4, 0.0, 0.125) == doctest::Approx(8.0));
  CHECK(evaluate_partition(p4, std::log(2.0), 0.125) == doctest::Approx(3.75));
  CHECK(evaluate_partition(ip_weighted_path(4), 60.0, 0.125) == doctest::Approx(1.0));
  const auto w4 = ip_weighted_path(4);
  CHECK(evaluate_partition(w4, 0.0, 0.05) == doctest::Approx(w4.coefficient_sum().convert_to<double>()));
}
