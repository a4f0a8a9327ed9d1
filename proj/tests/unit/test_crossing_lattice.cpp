#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "misembed/crossing_lattice.hpp"
#include "misembed/errors.hpp"
#include "misembed/random_graph.hpp"

#include <set>

using namespace misembed;

namespace {

const Rational kW{1, 8};
const Variant kVariants[] = {Variant::NonPlanar, Variant::Gadgeted};

WeightedGraph star4() { return {4, {{0, 1}, {1, 2}, {1, 3}}, {}, "star4"}; }

} // namespace

TEST_CASE("degenerate lattice of one vertex is the path embedding") {
  const auto cl = build_nonplanar_cl(edgeless_graph(1), kW);
  const auto pe = build_path_embedding(2, kW);
  CHECK(cl.host.edges() == pe.host.edges());
  CHECK(cl.host.exact_weights() == pe.host.exact_weights());
  CHECK(cl.crossings.empty());
}

TEST_CASE("non-planar lattice of a single edge") {
  const auto cl = build_nonplanar_cl(path_graph(2), kW);
  CHECK(cl.host.vertex_count() == 12);
  CHECK(cl.host.edge_count() == 2 * 5 + 1);
  REQUIRE(cl.crossings.size() == 1);
  const auto &site = cl.crossings[0];
  REQUIRE(site.direct_edge);
  // Chain 0 uses slot 1 (v_3), chain 1 uses slot 1 (v_3).
  CHECK(*site.direct_edge == Edge{2, 8});
  const auto spectrum = enumerate_low_energy(cl.host, WeightMode::exact(kW), Rational(1));
  std::set<Configuration> ground;
  for (const auto &r : spectrum.states)
    if (delta_energy_exact(r.energy, spectrum.window.e_mwis) == ExactValue())
      ground.insert(r.config);
  CHECK(ground == std::set<Configuration>{embed(cl, Configuration(2, {0})), embed(cl, Configuration(2, {1}))});
  // Both-selected is not independent; the best interpretable alternative is one level down.
  Configuration both(12);
  for (std::size_t i = 0; i < 12; i += 2)
    both.set(i);
  CHECK_FALSE(is_independent(cl.host, both));
}

TEST_CASE("crossing counts and kinds") {
  for (auto v : kVariants) {
    const auto cl = build_cl(star4(), kW, v);
    std::size_t with = 0, without = 0;
    for (const auto &s : cl.crossings)
      (s.kind == CrossingKind::WithEdge ? with : without)++;
    CHECK(with == 3);
    CHECK(without == 3);
    CHECK(cl.chains.size() == 4);
    for (const auto &chain : cl.chains)
      CHECK(chain.size() == 10);
  }
  const auto g = build_gadgeted_cl(star4(), kW);
  CHECK(g.host.vertex_count() == 40 + 3 * 3 + 3 * 4);
  for (const auto &s : g.crossings) {
    CHECK(s.gadgets.size() == (s.kind == CrossingKind::WithEdge ? 3U : 4U));
    for (const auto &gv : s.gadgets)
      CHECK(g.host.weight(gv.id) == ExactValue::integer(s.kind == CrossingKind::WithEdge ? 1 : 2));
  }
}

TEST_CASE("site indexing and slot rule") {
  const auto cl = build_gadgeted_cl(random_gnp(5, 0.5, 3), kW);
  for (std::size_t p = 0; p < 5; ++p)
    for (std::size_t q = p + 1; q < 5; ++q) {
      const auto &s = cl.site(p, q);
      CHECK(s.p == p);
      CHECK(s.q == q);
      CHECK(s.slot_p == q);
      CHECK(s.slot_q == p + 1);
    }
  // Every slot 1..N-1 of every chain is used exactly once.
  for (std::size_t p = 0; p < 5; ++p) {
    std::multiset<std::size_t> slots;
    for (const auto &s : cl.crossings) {
      if (s.p == p)
        slots.insert(s.slot_p);
      if (s.q == p)
        slots.insert(s.slot_q);
    }
    CHECK(slots == std::multiset<std::size_t>{1, 2, 3, 4});
  }
}

TEST_CASE("gadgeted lattice on two vertices") {
  const auto none = build_gadgeted_cl(edgeless_graph(2), kW);
  const auto mode = WeightMode::exact(kW);
  const auto spectrum = enumerate_low_energy(none.host, mode, Rational(1, 2));
  std::vector<ExactValue> interpretable;
  for (const auto &r : spectrum.states)
    if (interpret(none, r.config).interpretable())
      interpretable.push_back(delta_energy_exact(r.energy, spectrum.window.e_mwis));
  CHECK(interpretable == std::vector<ExactValue>{ExactValue(), ExactValue(0, 2), ExactValue(0, 2), ExactValue(0, 4)});

  const auto edge = build_gadgeted_cl(path_graph(2), kW);
  std::size_t count = 0;
  const auto all = enumerate_low_energy(edge.host, mode, Rational(3));
  for (const auto &r : all.states)
    count += interpret(edge, r.config).interpretable() ? 1 : 0;
  CHECK(count == 3);
  // Both chains selected: the best such state trails the ground state by >= 1 - 2w.
  std::optional<ExactValue> best11;
  for (const auto &r : all.states)
    if (chain_state(edge, 0, r.config) == 1 && chain_state(edge, 1, r.config) == 1) {
      best11 = delta_energy_exact(r.energy, all.window.e_mwis);
      break;
    }
  REQUIRE(best11);
  CHECK(compare_at(*best11, ExactValue(2, -2), kW) >= 0);
}

TEST_CASE("embed and interpret are inverse on IS(G)") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto g = random_gnp(2 + seed % 3, 0.5, seed);
    for (auto v : kVariants) {
      const auto cl = build_cl(g, kW, v);
      std::set<Configuration> images;
      for (const auto &s : all_independent_sets(g)) {
        const auto image = embed(cl, s);
        CHECK(is_independent(cl.host, image));
        CHECK(total_weight(cl.host, image) == cl.base_weight + static_cast<std::int64_t>(s.count()) * ExactValue(0, 2));
        const auto back = interpret(cl, image);
        REQUIRE(back.interpretable());
        CHECK(*back.source_state == s);
        images.insert(image);
      }
      CHECK(images.size() == all_independent_sets(g).size());
    }
  }
  const auto cl = build_gadgeted_cl(path_graph(3), kW);
  CHECK_THROWS_AS(embed(cl, Configuration(3, {0, 1})), StructuralError);
  const auto bottom = embed(cl, Configuration(3));
  for (const auto &s : cl.crossings)
    CHECK(bottom.test(*s.canonical(0, 0)));
}

TEST_CASE("an injected wall is located") {
  const auto cl = build_gadgeted_cl(star4(), kW);
  auto s = embed(cl, Configuration(4, {0, 2, 3}));
  // Drop v_2N+2 of the unselected chain 1: a wall at its last pair.
  const auto last = cl.chains[1].back();
  REQUIRE(s.test(last));
  s.set(last, false);
  const auto r = interpret(cl, s);
  CHECK_FALSE(r.interpretable());
  CHECK(r.chain_defects[1].wall_positions == std::vector<std::size_t>{cl.chain_length() - 2});
  CHECK(r.wall_count() == 1);
}

TEST_CASE("calibration passes on small graphs") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 0; seed < 4; ++seed)
      for (auto v : kVariants) {
        const auto rep = calibrate(build_cl(random_gnp(n, 0.5, seed), kW, v));
        CHECK(rep.ok());
      }
}

TEST_CASE("block distances") {
  CHECK(block_distance(3, 1, 2) == 1);
  CHECK(block_distance(5, 4, 5) == 1);
  CHECK(block_distance(5, 1, 1) == 0);
  CHECK(block_distance(5, 5, 5) == 0);
  CHECK(block_distance(5, 2, 4) == 3);
  const auto cl = build_gadgeted_cl(random_gnp(5, 0.5, 1), kW);
  const auto be = vertex_block_distances(cl);
  for (const auto &chain : cl.chains) {
    CHECK(be[chain.front()] == 0);
    CHECK(be[chain.back()] == 0);
    for (std::size_t k = 1; 2 * k < chain.size() - 1; ++k)
      CHECK(be[chain[2 * k - 1]] == be[chain[2 * k]]);
  }
  for (const auto &s : cl.crossings)
    for (const auto &gv : s.gadgets)
      CHECK(be[gv.id] == s.b_e);
}

TEST_CASE("modified lattice profile") {
  const auto g = random_gnp(4, 0.5, 2);
  for (auto v : kVariants) {
    const auto cl = build_cl(g, kW, v);
    const auto plain = modified_cl_profile(cl, 0.0, 1.0);
    CHECK(plain.real_weights() == cl.host.numeric_weights(WeightMode::exact(kW)));
    double previous = 0.0;
    for (double mu : {0.0, 0.5, 1.0, 2.0}) {
      const auto mod = modified_cl_profile(cl, mu, 1.0);
      const auto mode = WeightMode::real(kW, mu, 1.0);
      double total = 0.0;
      for (double x : mod.real_weights())
        total += x;
      if (mu > 0.0)
        CHECK(total > previous);
      previous = total;
      for (const auto &chain : cl.chains) {
        CHECK(mod.real_weights()[chain.front()] == doctest::Approx(0.625));
        CHECK(mod.real_weights()[chain.back()] == doctest::Approx(0.375));
      }
      // Interpretable ladder survives the modulation.
      const double base = total_weight(mod, embed(cl, Configuration(4)), mode);
      for (const auto &s : all_independent_sets(g))
        CHECK(total_weight(mod, embed(cl, s), mode) - base == doctest::Approx(0.25 * static_cast<double>(s.count())));
    }
  }
}

TEST_CASE("embedding JSON round trip") {
  for (auto v : kVariants) {
    const auto cl = build_cl(star4(), Rational(1, 20), v);
    const auto j = embedding_to_json(cl);
    CHECK(j["variant"] == to_string(v));
    CHECK(j["crossings"].size() == 6);
    const auto back = embedding_from_json(j);
    CHECK(back.host == cl.host);
    CHECK(back.chains == cl.chains);
    auto broken = j;
    broken["edges"].erase(broken["edges"].begin());
    CHECK_THROWS_AS(embedding_from_json(broken), ParseError);
  }
  CHECK_THROWS_AS(parse_variant("planar"), ParseError);
  CHECK_THROWS_AS(build_gadgeted_cl(build_path_embedding(2, kW).host, kW), StructuralError);
}
