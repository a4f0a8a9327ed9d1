#include "misembed/subdivision.hpp"

#include "misembed/errors.hpp"
#include "misembed/path_embedding.hpp"

#include <algorithm>
#include <ostream>

namespace misembed {

namespace {

void reduce(BigInt &num, BigInt &den) {
  if (den == 0)
    throw StructuralError("pathology: empty optimum set");
  const BigInt g = gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

} // namespace

std::vector<Vertex> SubdividedEdge::path() const {
  std::vector<Vertex> p{source.first};
  p.insert(p.end(), inserted.begin(), inserted.end());
  p.push_back(source.second);
  return p;
}

SubdivisionEmbedding subdivide(const WeightedGraph &g, const std::vector<std::size_t> &counts,
                               std::optional<Rational> profile_w) {
  if (counts.size() != g.edge_count())
    throw StructuralError("subdivide: one count per source edge required");
  SubdivisionEmbedding se;
  se.source = g;
  se.w = profile_w;
  std::size_t next = g.vertex_count();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto &e = g.edges()[i];
    if (counts[i] % 2 != 0)
      throw StructuralError("subdivide: odd vertex count on edge " + std::to_string(i));
    if (counts[i] == 0) {
      edges.push_back(e);
      continue;
    }
    SubdividedEdge sub{e, {}};
    for (std::size_t j = 0; j < counts[i]; ++j)
      sub.inserted.push_back(next++);
    const auto path = sub.path();
    for (std::size_t j = 0; j + 1 < path.size(); ++j)
      edges.emplace_back(path[j], path[j + 1]);
    se.paths.push_back(std::move(sub));
  }
  std::vector<ExactValue> weights;
  if (profile_w) {
    weights.assign(next, ExactValue::integer(1));
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      weights[v] = ExactValue::half() + ExactValue::bias();
  }
  se.host = WeightedGraph(next, std::move(edges), std::move(weights), g.name() + "_subdivided");
  return se;
}

WeightedGraph contract(const SubdivisionEmbedding &se) {
  const auto n = se.source.vertex_count();
  std::vector<Edge> edges;
  for (const auto &[u, v] : se.host.edges())
    if (u < n && v < n)
      edges.emplace_back(u, v);
  for (const auto &p : se.paths)
    edges.push_back(p.source);
  std::sort(edges.begin(), edges.end());
  return {n, std::move(edges), se.source.exact_weights(), se.source.name()};
}

ContractionResult contract_interpret(const SubdivisionEmbedding &se, const Configuration &s_host) {
  if (s_host.size() != se.host.vertex_count())
    throw StructuralError("contract_interpret: configuration size mismatch");
  if (!is_independent(se.host, s_host))
    throw StructuralError("contract_interpret: host state is not independent");
  const auto n = se.source.vertex_count();
  ContractionResult r;
  r.s = Configuration(n);
  for (std::size_t v = 0; v < n; ++v)
    r.s.set(v, s_host.test(v));
  r.repaired = r.s;
  for (const auto &[u, v] : se.source.edges())
    if (r.s.test(u) && r.s.test(v)) {
      r.violations.emplace_back(u, v);
      if (r.repaired.test(u) && r.repaired.test(v))
        r.repaired.set(std::max(u, v), false);
    }
  for (const auto &p : se.paths)
    r.walls += find_domain_walls(p.path(), s_host).wall_count();
  return r;
}

SubdivisionEmbedding triangle_family(std::size_t k, std::optional<Rational> profile_w) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) {
    edges.emplace_back(3 * i, 3 * i + 1);
    edges.emplace_back(3 * i, 3 * i + 2);
    edges.emplace_back(3 * i + 1, 3 * i + 2);
  }
  const WeightedGraph g(3 * k, edges, {}, "triangles_" + std::to_string(k));
  std::vector<std::size_t> counts(g.edge_count(), 0);
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    if (g.edges()[i].second == g.edges()[i].first + 1 && g.edges()[i].first % 3 == 0)
      counts[i] = 2;
  return subdivide(g, counts, profile_w);
}

PathologyReport odd_cycle_pathology(std::size_t k, std::optional<Rational> profile_w) {
  if (k == 0)
    throw StructuralError("odd_cycle_pathology: k must be positive");
  const auto se = triangle_family(k, profile_w);
  const auto mode = WeightMode::exact(profile_w.value_or(Rational(1, 8)));
  const auto spectrum = enumerate_low_energy(se.host, mode, Rational(0));
  PathologyReport rep;
  rep.k = k;
  BigInt walled = 0;
  for (const auto &rec : spectrum.states) {
    ++rep.n_mis;
    const auto r = contract_interpret(se, rec.config);
    rep.total_violations += r.violations.size();
    for (const auto &p : se.paths)
      walled += find_domain_walls(p.path(), rec.config).wall_count() > 0 ? 1 : 0;
  }
  rep.expected_num = rep.total_violations;
  rep.expected_den = rep.n_mis;
  reduce(rep.expected_num, rep.expected_den);
  rep.wall_prob_num = walled;
  rep.wall_prob_den = rep.n_mis * k;
  reduce(rep.wall_prob_num, rep.wall_prob_den);
  return rep;
}

void write_pathology_csv(std::ostream &out, const std::vector<PathologyReport> &reports) {
  out << "k,n_mis,expected_violations_num,expected_violations_den,wall_prob_num,wall_prob_den\n";
  for (const auto &r : reports)
    out << r.k << ',' << r.n_mis << ',' << r.expected_num << ',' << r.expected_den << ',' << r.wall_prob_num << ','
        << r.wall_prob_den << '\n';
}

} // namespace misembed
