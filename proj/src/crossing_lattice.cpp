#include "misembed/crossing_lattice.hpp"

#include "misembed/errors.hpp"
#include "misembed/graph_io.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace misembed {

std::string to_string(Variant v) { return v == Variant::NonPlanar ? "nonplanar" : "gadgeted"; }

Variant parse_variant(const std::string &s) {
  if (s == "nonplanar" || s == "non-planar")
    return Variant::NonPlanar;
  if (s == "gadgeted")
    return Variant::Gadgeted;
  throw ParseError("variant", "expected 'nonplanar' or 'gadgeted', got '" + s + "'");
}

std::optional<Vertex> CrossingSite::canonical(int a, int b) const {
  for (const auto &g : gadgets)
    if (g.a == a && g.b == b)
      return g.id;
  return std::nullopt;
}

std::size_t CrossingLattice::site_index(std::size_t p, std::size_t q) const {
  if (p > q)
    std::swap(p, q);
  if (p == q || q >= n())
    throw StructuralError("no crossing for pair (" + std::to_string(p) + "," + std::to_string(q) + ")");
  // Pairs (p, q), p < q, in lexicographic order.
  const auto nn = n();
  return p * nn - p * (p + 1) / 2 + (q - p - 1);
}

const CrossingSite &CrossingLattice::site(std::size_t p, std::size_t q) const { return crossings[site_index(p, q)]; }

std::size_t Interpretation::wall_count() const {
  std::size_t total = 0;
  for (const auto &r : chain_defects)
    total += r.wall_count();
  return total;
}

std::size_t block_distance(std::size_t n, std::size_t p1, std::size_t q1) {
  if (p1 < 1 || q1 < 1 || p1 > n || q1 > n)
    throw StructuralError("block index out of range");
  return std::min(std::max(p1, q1) - 1, n - std::min(p1, q1));
}

std::size_t block_distance(const CrossingLattice &cl, const CrossingSite &site) {
  return block_distance(cl.n(), site.p + 1, site.q + 1);
}

namespace {

void check_source(const WeightedGraph &g) {
  if (!g.is_unit_weighted())
    throw StructuralError("crossing lattice embeds unweighted graphs only");
  if (g.vertex_count() == 0)
    throw StructuralError("crossing lattice needs at least one vertex");
}

/// Chains and crossing bookkeeping shared by both variants; gadget
/// construction is left to the caller.
CrossingLattice lay_out_chains(const WeightedGraph &g, const Rational &w, Variant variant,
                               std::vector<ExactValue> &weights) {
  CrossingLattice cl;
  cl.source = g;
  cl.variant = variant;
  cl.w = w;
  const auto n = g.vertex_count();
  const auto len = 2 * n + 2;
  const auto profile = chain_profile(len);
  cl.chains.resize(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t i = 0; i < len; ++i) {
      cl.chains[p].push_back(p * len + i);
      weights.push_back(profile[i]);
      cl.info.push_back({CrossingLattice::Role::Chain, p, i});
    }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      CrossingSite site;
      site.p = p;
      site.q = q;
      site.kind = g.adjacent(p, q) ? CrossingKind::WithEdge : CrossingKind::WithoutEdge;
      site.slot_p = q;     // 1-based slot Q - 1 with Q = q + 1
      site.slot_q = p + 1; // 1-based slot P
      // v_j (1-based) of chain c is host id chains[c][j - 1].
      auto vtx = [&](std::size_t c, std::size_t j) { return cl.chains[c][j - 1]; };
      const auto kp = site.slot_p, kq = site.slot_q;
      site.odd_p = {vtx(p, 2 * kp - 1), vtx(p, 2 * kp + 1)};
      site.even_p = {vtx(p, 2 * kp), vtx(p, 2 * kp + 2)};
      site.odd_q = {vtx(q, 2 * kq - 1), vtx(q, 2 * kq + 1)};
      site.even_q = {vtx(q, 2 * kq), vtx(q, 2 * kq + 2)};
      site.b_e = block_distance(n, p + 1, q + 1);
      cl.crossings.push_back(std::move(site));
    }
  return cl;
}

std::vector<Edge> chain_edges(const CrossingLattice &cl) {
  std::vector<Edge> edges;
  for (const auto &chain : cl.chains)
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      edges.emplace_back(chain[i], chain[i + 1]);
  return edges;
}

std::string host_name(const WeightedGraph &g, Variant v) {
  return (v == Variant::NonPlanar ? "npcl_" : "gcl_") + (g.name().empty() ? std::string("g") : g.name());
}

/// G2 and G3 over every independent set of G.
void ladder_checks(const CrossingLattice &cl) {
  if (cl.n() > 20)
    return;
  for (const auto &s : all_independent_sets(cl.source)) {
    const auto image = embed(cl, s);
    const auto weight = total_weight(cl.host, image);
    const auto expected = cl.base_weight + static_cast<std::int64_t>(s.count()) * ExactValue(0, 2);
    if (weight != expected)
      throw InvariantViolation("ladder check failed: weight " + weight.str() + ", expected " + expected.str());
    for (const auto &site : cl.crossings) {
      ExactValue gadget;
      for (const auto &gv : site.gadgets)
        if (image.test(gv.id))
          gadget += cl.host.weight(gv.id);
      const auto expect = site.gadgets.empty() ? ExactValue()
                          : site.kind == CrossingKind::WithEdge ? ExactValue::integer(1)
                                                                : ExactValue::integer(2);
      if (gadget != expect)
        throw InvariantViolation("gadget constancy failed at crossing (" + std::to_string(site.p) + "," +
                                 std::to_string(site.q) + ")");
    }
  }
}

} // namespace

CrossingLattice build_nonplanar_cl(const WeightedGraph &g, const Rational &w) {
  check_source(g);
  std::vector<ExactValue> weights;
  auto cl = lay_out_chains(g, w, Variant::NonPlanar, weights);
  auto edges = chain_edges(cl);
  for (auto &site : cl.crossings)
    if (site.kind == CrossingKind::WithEdge) {
      // v_2k+1 on each chain: the odd vertex closing the slot.
      site.direct_edge = Edge{site.odd_p[1], site.odd_q[1]};
      edges.push_back(*site.direct_edge);
    }
  const auto count = weights.size();
  cl.host = WeightedGraph(count, std::move(edges), std::move(weights), host_name(g, Variant::NonPlanar));
  cl.base_weight = total_weight(cl.host, embed(cl, Configuration(g.vertex_count())));
  ladder_checks(cl);
  return cl;
}

CrossingLattice build_gadgeted_cl(const WeightedGraph &g, const Rational &w) {
  check_source(g);
  std::vector<ExactValue> weights;
  auto cl = lay_out_chains(g, w, Variant::Gadgeted, weights);
  auto edges = chain_edges(cl);
  for (std::size_t c = 0; c < cl.crossings.size(); ++c) {
    auto &site = cl.crossings[c];
    const bool with_edge = site.kind == CrossingKind::WithEdge;
    const auto first = weights.size();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        if (with_edge && a == 1 && b == 1)
          continue;
        const Vertex id = weights.size();
        site.gadgets.push_back({a, b, id});
        weights.push_back(ExactValue::integer(with_edge ? 1 : 2));
        cl.info.push_back({CrossingLattice::Role::Gadget, c, 0});
        for (auto u : a == 0 ? site.odd_p : site.even_p)
          edges.emplace_back(u, id);
        for (auto u : b == 0 ? site.odd_q : site.even_q)
          edges.emplace_back(u, id);
      }
    for (Vertex x = first; x < weights.size(); ++x)
      for (Vertex y = x + 1; y < weights.size(); ++y)
        edges.emplace_back(x, y);
  }
  const auto count = weights.size();
  cl.host = WeightedGraph(count, std::move(edges), std::move(weights), host_name(g, Variant::Gadgeted));
  cl.base_weight = total_weight(cl.host, embed(cl, Configuration(g.vertex_count())));
  ladder_checks(cl);
  return cl;
}

CrossingLattice build_cl(const WeightedGraph &g, const Rational &w, Variant variant) {
  return variant == Variant::NonPlanar ? build_nonplanar_cl(g, w) : build_gadgeted_cl(g, w);
}

Configuration embed(const CrossingLattice &cl, const Configuration &s) {
  if (s.size() != cl.n())
    throw StructuralError("configuration does not index the source graph");
  if (!is_independent(cl.source, s))
    throw StructuralError("embed: configuration is not an independent set of the source graph");
  Configuration out(cl.host.vertex_count());
  for (std::size_t p = 0; p < cl.n(); ++p) {
    const int parity = s.test(p) ? 0 : 1;
    for (std::size_t i = 0; i < cl.chains[p].size(); ++i)
      if (static_cast<int>(i % 2) == parity)
        out.set(cl.chains[p][i]);
  }
  for (const auto &site : cl.crossings)
    if (auto id = site.canonical(s.test(site.p), s.test(site.q)))
      out.set(*id);
  return out;
}

std::optional<int> chain_state(const CrossingLattice &cl, std::size_t p, const Configuration &s_host) {
  const auto &chain = cl.chains[p];
  bool odd = true, even = true;
  for (std::size_t i = 0; i < chain.size() && (odd || even); ++i) {
    const bool bit = s_host.test(chain[i]);
    const bool odd_vertex = i % 2 == 0;
    if (bit != odd_vertex)
      odd = false;
    if (bit == odd_vertex)
      even = false;
  }
  if (odd)
    return 1;
  if (even)
    return 0;
  return std::nullopt;
}

Interpretation interpret(const CrossingLattice &cl, const Configuration &s_host) {
  if (s_host.size() != cl.host.vertex_count())
    throw StructuralError("configuration does not index the host graph");
  Interpretation out;
  std::vector<std::optional<int>> states(cl.n());
  bool chains_ok = true;
  for (std::size_t p = 0; p < cl.n(); ++p) {
    out.chain_defects.push_back(find_domain_walls(cl.chains[p], s_host));
    states[p] = chain_state(cl, p, s_host);
    chains_ok = chains_ok && states[p].has_value();
  }
  for (std::size_t c = 0; c < cl.crossings.size(); ++c) {
    const auto &site = cl.crossings[c];
    if (!states[site.p] || !states[site.q])
      continue;
    bool canonical = true;
    if (site.gadgets.empty()) {
      canonical = site.kind == CrossingKind::WithoutEdge || !(*states[site.p] == 1 && *states[site.q] == 1);
    } else {
      const auto expect = site.canonical(*states[site.p], *states[site.q]);
      for (const auto &gv : site.gadgets)
        if (s_host.test(gv.id) != (expect && *expect == gv.id))
          canonical = false;
      if (!expect)
        canonical = false;
    }
    if (!canonical)
      out.noncanonical_crossings.push_back(c);
  }
  if (chains_ok && out.noncanonical_crossings.empty()) {
    Configuration s(cl.n());
    for (std::size_t p = 0; p < cl.n(); ++p)
      s.set(p, *states[p] == 1);
    out.source_state = s;
  }
  return out;
}

std::vector<std::size_t> vertex_block_distances(const CrossingLattice &cl) {
  const auto n = cl.n();
  std::vector<std::size_t> out(cl.host.vertex_count(), 0);
  for (std::size_t p = 0; p < n; ++p) {
    const auto p1 = p + 1;
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t be = 0;
      if (k == n)
        be = block_distance(n, p1, p1);
      else if (k >= p1)
        be = block_distance(n, p1, k + 1); // crossing with chain Q = k + 1
      else
        be = block_distance(n, k, p1); // crossing with chain P' = k
      out[cl.chains[p][2 * k - 1]] = be; // v_2k
      out[cl.chains[p][2 * k]] = be;     // v_2k+1
    }
  }
  for (const auto &site : cl.crossings)
    for (const auto &gv : site.gadgets)
      out[gv.id] = site.b_e;
  return out;
}

WeightedGraph modified_cl_profile(const CrossingLattice &cl, double mu, double nu) {
  const auto base = cl.host.numeric_weights(WeightMode::real(cl.w));
  const auto be = vertex_block_distances(cl);
  std::vector<double> ws(base.size());
  for (std::size_t v = 0; v < base.size(); ++v)
    ws[v] = base[v] * penalty(be[v], mu, nu);
  auto g = cl.host.reweighted_real(std::move(ws));
  g.set_name(cl.host.name() + "_mod");
  return g;
}

CalibrationReport calibrate(const CrossingLattice &cl, const SolverOptions &options) {
  CalibrationReport rep;
  const auto mode = WeightMode::exact(cl.w);
  const auto independent = all_independent_sets(cl.source);
  std::size_t mis_size = 0;
  for (const auto &s : independent)
    mis_size = std::max(mis_size, s.count());

  // G2, G3.
  rep.g2 = rep.g3 = true;
  for (const auto &s : independent) {
    const auto image = embed(cl, s);
    const auto weight = total_weight(cl.host, image);
    if (weight != cl.base_weight + static_cast<std::int64_t>(s.count()) * ExactValue(0, 2)) {
      rep.g2 = false;
      rep.failures.push_back("G2: weight of f(" + s.to_hex() + ") off the ladder");
    }
    for (const auto &site : cl.crossings) {
      ExactValue gadget;
      for (const auto &gv : site.gadgets)
        if (image.test(gv.id))
          gadget += cl.host.weight(gv.id);
      const bool expect_empty = site.gadgets.empty();
      const auto expect = expect_empty ? ExactValue()
                          : site.kind == CrossingKind::WithEdge ? ExactValue::integer(1)
                                                                : ExactValue::integer(2);
      if (gadget != expect) {
        rep.g3 = false;
        rep.failures.push_back("G3: crossing (" + std::to_string(site.p) + "," + std::to_string(site.q) + ")");
      }
    }
  }

  // G1.
  const auto ground = enumerate_low_energy(cl.host, mode, Rational(0), options);
  std::set<Configuration> expected, found;
  for (const auto &s : independent)
    if (s.count() == mis_size)
      expected.insert(embed(cl, s));
  for (const auto &r : ground.states)
    found.insert(r.config);
  rep.g1 = expected == found;
  if (!rep.g1)
    rep.failures.push_back("G1: host ground states differ from f(MIS)");

  // G4.
  const ExactValue price = ExactValue::half() - ExactValue::bias();
  rep.g4_equality_expected = cl.source.edge_count() > 0;
  const auto window = enumerate_low_energy(cl.host, mode, price.evaluate(cl.w), options);
  bool below_ok = true;
  for (const auto &r : window.states) {
    if (interpret(cl, r.config).interpretable())
      continue;
    const auto gap = delta_energy_exact(r.energy, window.window.e_mwis);
    if (!rep.min_noninterpretable_gap || compare_at(gap, *rep.min_noninterpretable_gap, cl.w) < 0)
      rep.min_noninterpretable_gap = gap;
    if (compare_at(gap, price, cl.w) < 0)
      below_ok = false;
  }
  if (rep.g4_equality_expected)
    rep.g4 = below_ok && rep.min_noninterpretable_gap && compare_at(*rep.min_noninterpretable_gap, price, cl.w) == 0;
  else
    rep.g4 = below_ok;
  if (!rep.g4)
    rep.failures.push_back("G4: smallest non-interpretable gap is " +
                           (rep.min_noninterpretable_gap ? rep.min_noninterpretable_gap->str() : std::string("none")));
  return rep;
}

nlohmann::json embedding_to_json(const CrossingLattice &cl) {
  nlohmann::json j = graph_to_json(cl.host);
  j["variant"] = to_string(cl.variant);
  j["w"] = cl.w.str();
  j["source"] = graph_to_json(cl.source);
  j["chains"] = cl.chains;
  nlohmann::json sites = nlohmann::json::array();
  for (const auto &site : cl.crossings) {
    nlohmann::json s;
    s["pair"] = {site.p, site.q};
    s["kind"] = site.kind == CrossingKind::WithEdge ? "with_edge" : "without_edge";
    nlohmann::json gs = nlohmann::json::array();
    for (const auto &gv : site.gadgets)
      gs.push_back({{"role", gv.role()}, {"id", gv.id}});
    s["gadgets"] = std::move(gs);
    s["b_e"] = site.b_e;
    if (site.direct_edge)
      s["direct_edge"] = {site.direct_edge->first, site.direct_edge->second};
    sites.push_back(std::move(s));
  }
  j["crossings"] = std::move(sites);
  return j;
}

CrossingLattice embedding_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("variant") || !j.contains("w"))
    throw ParseError("embedding", "expected an object with source, variant and w");
  const auto source = graph_from_json(j["source"]);
  auto cl = build_cl(source, Rational::parse(j["w"].get<std::string>()), parse_variant(j["variant"].get<std::string>()));
  if (j.contains("edges")) {
    const auto stored = graph_from_json(j);
    if (stored.vertex_count() != cl.host.vertex_count() || stored.edges() != cl.host.edges() ||
        stored.exact_weights() != cl.host.exact_weights())
      throw ParseError("edges", "stored host does not match the construction for this source graph");
  }
  return cl;
}

} // namespace misembed
