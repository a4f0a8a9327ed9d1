#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "misembed/errors.hpp"
#include "misembed/graph_io.hpp"
#include "misembed/random_graph.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace misembed;

namespace {

WeightedGraph weighted_p4() {
  const ExactValue h = ExactValue::half(), b = ExactValue::bias();
  return {4, {{0, 1}, {1, 2}, {2, 3}}, {h + b, ExactValue::integer(1), ExactValue::integer(1), h - b}, "wP4"};
}

} // namespace

TEST_CASE("rational parsing and normalisation") {
  CHECK(Rational::parse("2/16") == Rational(1, 8));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(1, 8).str() == "1/8");
  CHECK_THROWS_AS(Rational::parse("1/x"), ParseError);
  CHECK_THROWS_AS(Rational(1, 0), StructuralError);
  CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("exact values: arithmetic and evaluation") {
  const ExactValue a{3, 1}, b{-1, 2};
  CHECK(a + b == ExactValue{2, 3});
  CHECK(a - b == ExactValue{4, -1});
  CHECK(-a == ExactValue{-3, -1});
  CHECK(3 * a == ExactValue{9, 3});
  CHECK(a.str() == "3/2+w");
  CHECK(ExactValue(1, -3).str() == "1/2-3w");
  CHECK(ExactValue().str() == "0");
  CHECK(ExactValue::integer(2).str() == "2");
  CHECK(a.evaluate(Rational(1, 8)) == Rational(13, 8));
  CHECK(a.scaled(Rational(1, 8)) == 3 * 8 + 2 * 1);
}

TEST_CASE("exact evaluation is a ring homomorphism and ordering agrees with evaluation") {
  std::mt19937_64 rng(7);
  const Rational ws[] = {Rational(1, 4), Rational(1, 8), Rational(1, 20), Rational(1, 5), Rational(1, 13)};
  for (int trial = 0; trial < 2000; ++trial) {
    auto draw = [&rng] { return static_cast<std::int64_t>(rng() % 41) - 20; };
    const ExactValue x{draw(), draw()}, y{draw(), draw()};
    const auto w = ws[trial % 5];
    CHECK((x + y).evaluate(w) == x.evaluate(w) + y.evaluate(w));
    const auto c = compare_at(x, y, w);
    const auto ref = x.evaluate(w) <=> y.evaluate(w);
    CHECK(c == ref);
    if (c == 0 && std::abs(x.w_units() - y.w_units()) * 0.5 < std::abs(x.half_units() - y.half_units()) * 0.5)
      CHECK(x == y);
  }
}

TEST_CASE("half-integer distance") {
  CHECK(distance_to_half_integer(1.5) == doctest::Approx(0.0));
  CHECK(distance_to_half_integer(1.3) == doctest::Approx(0.2));
  CHECK(distance_to_half_integer(-0.6) == doctest::Approx(0.1));
}

TEST_CASE("configuration basics and hex round trip") {
  Configuration c(10, {0, 3, 9});
  CHECK(c.count() == 3);
  CHECK(c.to_hex() == "209");
  CHECK(Configuration::from_hex("209", 10) == c);
  CHECK(c.selected() == std::vector<std::size_t>{0, 3, 9});
  Configuration d(10, {0, 4});
  CHECK(c.hamming(d) == 3);
  CHECK(d < c);
  CHECK_THROWS_AS(c.hamming(Configuration(11)), StructuralError);
  Configuration big(130, {0, 129});
  CHECK(Configuration::from_hex(big.to_hex(), 130) == big);
  CHECK(Configuration(130, {129}) > Configuration(130, {0, 1, 2, 64}));
}

TEST_CASE("total weight") {
  const auto p4 = path_graph(4);
  CHECK(total_weight(p4, Configuration(4, {0, 2})) == ExactValue::integer(2));
  CHECK(total_weight(weighted_p4(), Configuration(4, {0, 2})) == ExactValue(3, 1));
  CHECK(total_weight(p4, Configuration(4)) == ExactValue());
  CHECK_THROWS_AS(total_weight(p4, Configuration(5)), StructuralError);
  CHECK(total_weight(weighted_p4(), Configuration(4, {0, 2}), WeightMode::exact(Rational(1, 8))) ==
        doctest::Approx(13.0 / 8));
}

TEST_CASE("independence predicate") {
  const auto p4 = path_graph(4);
  CHECK(is_independent(p4, Configuration(4, {0, 2})));
  CHECK_FALSE(is_independent(p4, Configuration(4, {0, 1})));
  CHECK(is_independent(p4, Configuration(4)));
  CHECK(all_independent_sets(p4).size() == 8);
  CHECK(all_independent_sets(complete_graph(3)).size() == 4);
}

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 0}}), StructuralError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1}, {1, 0}}), StructuralError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 3}}), StructuralError);
  WeightedGraph g(3, {{2, 1}, {1, 0}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(g.is_unit_weighted());
}

TEST_CASE("G(n, p) extremes and determinism") {
  CHECK(random_gnp(5, 0.0, 3).edge_count() == 0);
  CHECK(random_gnp(5, 1.0, 3).edge_count() == 10);
  CHECK(random_gnp(12, 0.5, 99) == random_gnp(12, 0.5, 99));
  CHECK_FALSE(random_gnp(12, 0.5, 99).edges() == random_gnp(12, 0.5, 100).edges());
  CHECK_THROWS_AS(random_gnp(3, 1.5, 0), StructuralError);
}

TEST_CASE("G(7, 1/2, seed 42) matches the frozen fixture") {
  const auto golden = read_graph_file(std::filesystem::path(MISEMBED_GOLDEN_DIR) / "gnp_n7_p0.5_s42.json");
  const auto g = random_gnp(7, 0.5, 42);
  CHECK(g.edges() == golden.edges());
  CHECK(g.edge_count() == 9);
}

TEST_CASE("graph JSON round trip and errors") {
  const auto dir = std::filesystem::temp_directory_path() / "misembed_test_io";
  std::filesystem::create_directories(dir);
  for (const auto &g : {weighted_p4(), random_gnp(9, 0.4, 5), edgeless_graph(0)}) {
    CHECK(graph_from_json(graph_to_json(g)) == g);
    RunHeader h;
    h.seed = 5;
    h.w = Rational(1, 8);
    write_graph_file(dir / "g.json", g, h);
    CHECK(read_graph_file(dir / "g.json") == g);
  }
  const auto real = WeightedGraph::with_real_weights(2, {{0, 1}}, {0.25, 1.5});
  CHECK(graph_from_json(graph_to_json(real)) == real);

  auto bad = nlohmann::json::parse(R"({"n": 3, "edges": [[0, 0]], "weights": null})");
  try {
    graph_from_json(bad);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.field() == "edges[0]");
    CHECK(std::string(e.what()).find("self-loop") != std::string::npos);
  }
  bad = nlohmann::json::parse(R"({"n": 3, "edges": [[0, 5]]})");
  CHECK_THROWS_WITH_AS(graph_from_json(bad), doctest::Contains("out of range"), ParseError);
  bad = nlohmann::json::parse(R"({"n": 3, "edges": [[0, 1], [1, 0]]})");
  CHECK_THROWS_WITH_AS(graph_from_json(bad), doctest::Contains("duplicate"), ParseError);
  bad = nlohmann::json::parse(R"({"n": 2, "edges": [], "weights": [{"half": 1}]})");
  CHECK_THROWS_AS(graph_from_json(bad), ParseError);

  std::ofstream(dir / "broken.json") << "{\"n\": 3, \"edges\": [";
  CHECK_THROWS_AS(read_graph_file(dir / "broken.json"), ParseError);

  const auto star = graph_from_json(nlohmann::json::parse(R"({"n": 4, "edges": [[0,1],[1,2],[1,3]], "weights": null})"));
  CHECK(star.edge_count() == 3);
  CHECK(4 * 3 / 2 - star.edge_count() == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("run header round trip") {
  RunHeader h;
  h.seed = 42;
  h.w = Rational(1, 20);
  h.extra["variant"] = "gadgeted";
  const auto back = RunHeader::from_json(h.to_json());
  CHECK(back.seed == h.seed);
  CHECK(back.w == h.w);
  CHECK(back.extra["variant"] == "gadgeted");
  CHECK(h.to_json()["format_version"] == 1);
}
