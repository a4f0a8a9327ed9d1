#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "misembed/errors.hpp"
#include "misembed/path_embedding.hpp"
#include "misembed/solver.hpp"

using namespace misembed;

namespace {

const ExactValue kHalf = ExactValue::half();
const ExactValue kBias = ExactValue::bias();

/// Independent scan: count i with s[i] == s[i+1] == 0 directly on the bits.
std::size_t walls_by_scan(const Configuration &s) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    count += (!s.test(i) && !s.test(i + 1)) ? 1 : 0;
  return count;
}

} // namespace

TEST_CASE("weight profile and antiferromagnetic states") {
  const auto pe = build_path_embedding(2, Rational(1, 8));
  const auto &ws = pe.host.exact_weights();
  CHECK(ws == std::vector<ExactValue>{kHalf + kBias, ExactValue::integer(1), ExactValue::integer(1), kHalf - kBias});
  const auto numeric = pe.host.numeric_weights(WeightMode::exact(pe.w));
  CHECK(numeric == std::vector<double>{0.625, 1.0, 1.0, 0.375});

  for (std::size_t n = 1; n <= 10; ++n) {
    const auto p = build_path_embedding(n, Rational(1, 8));
    CHECK(is_independent(p.host, p.f_selected));
    CHECK(is_independent(p.host, p.f_unselected));
    const auto sel = total_weight(p.host, p.f_selected);
    CHECK(sel == ExactValue(2 * static_cast<std::int64_t>(n) - 1, 1));
    CHECK(sel - total_weight(p.host, p.f_unselected) == ExactValue(0, 2));
    const auto best = solve_mwis(p.host, WeightMode::exact(p.w));
    CHECK(best.config == p.f_selected);
    CHECK(best.weight.exact == sel);
  }

  const auto p2 = build_path_embedding(1, Rational(1, 4));
  CHECK(p2.host.exact_weights() == std::vector<ExactValue>{kHalf + kBias, kHalf - kBias});
  CHECK(solve_mwis(p2.host, WeightMode::exact(p2.w)).config == Configuration(2, {0}));
  CHECK_THROWS_AS(build_path_embedding(0, Rational(1, 8)), StructuralError);
}

TEST_CASE("domain walls") {
  const auto pe = build_path_embedding(3, Rational(1, 8));
  CHECK(find_domain_walls(pe, pe.f_selected).wall_count() == 0);
  CHECK(find_domain_walls(pe, pe.f_unselected).wall_count() == 0);
  // {v1, v5}: unselected v2, v3, v4, v6 give pairs (v2,v3), (v3,v4).
  const auto r = find_domain_walls(pe, Configuration(6, {0, 4}));
  CHECK(r.wall_count() == 2);
  CHECK(r.wall_positions == std::vector<std::size_t>{1, 2});
  CHECK(find_domain_walls(pe, Configuration(6, {1, 3, 5})).wall_count() == 0);
}

TEST_CASE("zero walls exactly on the two antiferromagnetic states") {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto pe = build_path_embedding(n, Rational(1, 8));
    std::size_t zero = 0;
    for (const auto &s : all_independent_sets(pe.host)) {
      const auto walls = find_domain_walls(pe, s).wall_count();
      CHECK(walls == walls_by_scan(s));
      if (walls == 0) {
        ++zero;
        CHECK((s == pe.f_selected || s == pe.f_unselected));
      }
    }
    CHECK(zero == 2);
  }
}

TEST_CASE("path distance") {
  const auto pe = build_path_embedding(2, Rational(1, 8));
  CHECK(path_distance(pe, pe.f_unselected).d == 0);
  CHECK(path_distance(pe, pe.f_unselected).nearest == Nearest::Unselected);
  // {v1, v4}: one flip (v4 -> v3 is two flips; v1 off gives {v4}, two from {v2,v4}).
  const auto d = path_distance(pe, Configuration(4, {0, 3}));
  CHECK(d.to_selected == 2);
  CHECK(d.to_unselected == 2);
  CHECK(d.d == 2);
  CHECK(d.nearest == Nearest::Tie);
  const auto e = path_distance(pe, Configuration(4, {0}));
  CHECK(e.d == 1);
  CHECK(e.nearest == Nearest::Selected);
}

TEST_CASE("single-wall states reach distance N and never exceed it") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto pe = build_path_embedding(n, Rational(1, 8));
    std::size_t max_single_wall = 0;
    for (const auto &s : all_independent_sets(pe.host)) {
      const auto pd = path_distance(pe, s);
      CHECK(pd.d <= n);
      CHECK(pd.to_selected + pd.to_unselected == 2 * n);
      if (find_domain_walls(pe, s).wall_count() == 1)
        max_single_wall = std::max(max_single_wall, pd.d);
    }
    CHECK(max_single_wall == n);
  }
}

TEST_CASE("distance is additive over disjoint paths") {
  const auto a = build_path_embedding(2, Rational(1, 8));
  const auto b = build_path_embedding(3, Rational(1, 8));
  const auto u = disjoint_union(a.host, b.host);
  const std::vector<Vertex> ca{0, 1, 2, 3}, cb{4, 5, 6, 7, 8, 9};
  for (const auto &s : all_independent_sets(u)) {
    Configuration sa(4), sb(6);
    for (std::size_t i = 0; i < 4; ++i)
      sa.set(i, s.test(i));
    for (std::size_t i = 0; i < 6; ++i)
      sb.set(i, s.test(4 + i));
    CHECK(path_distance(ca, s).d + path_distance(cb, s).d == path_distance(a, sa).d + path_distance(b, sb).d);
  }
}

TEST_CASE("non-interpretable states cost at least 1/2 + w, attained") {
  for (const auto &w : {Rational(1, 4), Rational(1, 20)}) {
    for (std::size_t n = 1; n <= 10; ++n) {
      const auto pe = build_path_embedding(n, w);
      const auto spectrum = enumerate_low_energy(pe.host, WeightMode::exact(w), Rational(100));
      std::optional<ExactValue> lowest;
      for (const auto &r : spectrum.states)
        if (find_domain_walls(pe, r.config).wall_count() > 0) {
          lowest = delta_energy_exact(r.energy, spectrum.window.e_mwis);
          break;
        }
      REQUIRE(lowest);
      CHECK(*lowest == kHalf + kBias);
    }
  }
}

TEST_CASE("small bias: energies sit near l/2") {
  const Rational w(1, 20);
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto pe = build_path_embedding(n, w);
    const auto spectrum = enumerate_low_energy(pe.host, WeightMode::exact(w), Rational(100));
    for (const auto &r : spectrum.states) {
      const auto gap = delta_energy_exact(r.energy, spectrum.window.e_mwis).evaluate(w);
      const auto l = static_cast<std::int64_t>(find_domain_walls(pe, r.config).wall_count());
      const auto slack = Rational(2 * static_cast<std::int64_t>(n)) * w;
      CHECK(gap >= Rational(l, 2) - slack);
      CHECK(gap <= Rational(l, 2) + slack);
    }
  }
}

TEST_CASE("penalty function and modified profile") {
  CHECK(penalty(2, 1.0, 1.0) == doctest::Approx(3.0));
  CHECK(penalty(1, 0.0, 2.0) == doctest::Approx(2.0));
  CHECK(penalty(0, 3.0, 5.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(penalty(1, -0.5, 1.0), StructuralError);
  CHECK_THROWS_AS(penalty(1, 0.0, 0.5), StructuralError);

  CHECK(endpoint_distance(1, 3) == 0);
  CHECK(endpoint_distance(6, 3) == 0);
  CHECK(endpoint_distance(3, 3) == 2);
  CHECK(endpoint_distance(4, 3) == 2);

  const auto pe = build_path_embedding(4, Rational(1, 8));
  const auto plain = modified_path_profile(pe, 0.0, 1.0);
  CHECK(plain.real_weights() == pe.host.numeric_weights(WeightMode::exact(pe.w)));

  for (double mu : {0.0, 0.5, 1.0, 2.0})
    for (double nu : {1.0, 1.5, 2.0}) {
      const auto g = modified_path_profile(pe, mu, nu);
      const auto mode = WeightMode::real(pe.w, mu, nu);
      const double sel = total_weight(g, pe.f_selected, mode);
      const double unsel = total_weight(g, pe.f_unselected, mode);
      CHECK(sel - unsel == doctest::Approx(0.25));
      CHECK(solve_mwis(g, mode).config == pe.f_selected);
      CHECK(g.real_weights().front() == doctest::Approx(0.625));
      CHECK(g.real_weights().back() == doctest::Approx(0.375));
    }
}
