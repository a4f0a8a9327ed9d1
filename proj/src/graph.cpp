#include "misembed/graph.hpp"

#include "misembed/errors.hpp"

#include <algorithm>
#include <cmath>

namespace misembed {

namespace {

void check_length(const WeightedGraph &g, const Configuration &s) {
  if (s.size() != g.vertex_count())
    throw StructuralError("configuration of length " + std::to_string(s.size()) + " does not index a graph with " +
                          std::to_string(g.vertex_count()) + " vertices");
}

} // namespace

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges, std::vector<ExactValue> weights,
                             std::string name)
    : n_(vertex_count), edges_(std::move(edges)), weights_(std::move(weights)), name_(std::move(name)) {
  if (weights_.empty())
    weights_.assign(n_, ExactValue::integer(1));
  if (weights_.size() != n_)
    throw StructuralError("expected " + std::to_string(n_) + " weights, got " + std::to_string(weights_.size()));
  build_adjacency();
}

WeightedGraph WeightedGraph::with_real_weights(std::size_t vertex_count, std::vector<Edge> edges,
                                               std::vector<double> weights, std::string name) {
  if (weights.size() != vertex_count)
    throw StructuralError("expected " + std::to_string(vertex_count) + " weights");
  for (double x : weights)
    if (!std::isfinite(x))
      throw StructuralError("non-finite weight");
  WeightedGraph g(vertex_count, std::move(edges), {}, std::move(name));
  g.real_weights_ = std::move(weights);
  return g;
}

void WeightedGraph::build_adjacency() {
  for (auto &[u, v] : edges_) {
    if (u >= n_ || v >= n_)
      throw StructuralError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    if (u == v)
      throw StructuralError("self-loop at vertex " + std::to_string(u));
    if (u > v)
      std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
    throw StructuralError("duplicate edge (" + std::to_string(dup->first) + "," + std::to_string(dup->second) + ")");
  adjacency_.assign(n_, {});
  adjacency_bits_.assign(n_, Configuration(n_));
  for (const auto &[u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
    adjacency_bits_[u].set(v);
    adjacency_bits_[v].set(u);
  }
  for (auto &list : adjacency_)
    std::sort(list.begin(), list.end());
}

const std::vector<ExactValue> &WeightedGraph::exact_weights() const {
  if (real_weights_)
    throw StructuralError("graph carries real-valued weights; exact weights unavailable");
  return weights_;
}

std::vector<double> WeightedGraph::numeric_weights(const WeightMode &mode) const {
  if (real_weights_) {
    if (mode.is_exact())
      throw StructuralError("real-weighted graph cannot be evaluated in exact mode");
    return *real_weights_;
  }
  std::vector<double> out(n_);
  const double w = mode.w_value();
  for (std::size_t i = 0; i < n_; ++i)
    out[i] = weights_[i].evaluate(w);
  return out;
}

std::vector<std::int64_t> WeightedGraph::scaled_weights(const Rational &w) const {
  const auto &ws = exact_weights();
  std::vector<std::int64_t> out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    out[i] = ws[i].scaled(w);
  return out;
}

bool WeightedGraph::is_unit_weighted() const {
  if (real_weights_)
    return false;
  return std::all_of(weights_.begin(), weights_.end(), [](const ExactValue &x) { return x == ExactValue::integer(1); });
}

WeightedGraph WeightedGraph::induced(const std::vector<Vertex> &keep) const {
  std::vector<std::size_t> index(n_, n_);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= n_)
      throw StructuralError("induced: vertex out of range");
    index[keep[i]] = i;
  }
  std::vector<Edge> edges;
  for (const auto &[u, v] : edges_)
    if (index[u] < n_ && index[v] < n_)
      edges.emplace_back(index[u], index[v]);
  if (real_weights_) {
    std::vector<double> ws;
    for (auto v : keep)
      ws.push_back((*real_weights_)[v]);
    return with_real_weights(keep.size(), std::move(edges), std::move(ws), name_);
  }
  std::vector<ExactValue> ws;
  for (auto v : keep)
    ws.push_back(weights_[v]);
  return {keep.size(), std::move(edges), std::move(ws), name_};
}

WeightedGraph WeightedGraph::reweighted(std::vector<ExactValue> weights) const {
  return {n_, edges_, std::move(weights), name_};
}

WeightedGraph WeightedGraph::reweighted_real(std::vector<double> weights) const {
  return with_real_weights(n_, edges_, std::move(weights), name_);
}

bool operator==(const WeightedGraph &a, const WeightedGraph &b) {
  return a.n_ == b.n_ && a.edges_ == b.edges_ && a.weights_ == b.weights_ && a.real_weights_ == b.real_weights_ &&
         a.name_ == b.name_;
}

ExactValue total_weight(const WeightedGraph &g, const Configuration &s) {
  check_length(g, s);
  const auto &ws = g.exact_weights();
  ExactValue total;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.test(i))
      total += ws[i];
  return total;
}

double total_weight(const WeightedGraph &g, const Configuration &s, const WeightMode &mode) {
  check_length(g, s);
  const auto ws = g.numeric_weights(mode);
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.test(i))
      total += ws[i];
  return total;
}

bool is_independent(const WeightedGraph &g, const Configuration &s) {
  check_length(g, s);
  for (const auto &[u, v] : g.edges())
    if (s.test(u) && s.test(v))
      return false;
  return true;
}

std::vector<Configuration> all_independent_sets(const WeightedGraph &g) {
  const auto n = g.vertex_count();
  if (n > 30)
    throw BudgetExceeded("all_independent_sets: graph too large for subset enumeration");
  std::vector<std::uint32_t> neighbor_mask(n, 0);
  for (const auto &[u, v] : g.edges()) {
    neighbor_mask[u] |= 1U << v;
    neighbor_mask[v] |= 1U << u;
  }
  std::vector<Configuration> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v)
      if (((mask >> v) & 1U) && (neighbor_mask[v] & mask))
        ok = false;
    if (!ok)
      continue;
    Configuration c(n);
    for (std::size_t v = 0; v < n; ++v)
      if ((mask >> v) & 1U)
        c.set(v);
    out.push_back(std::move(c));
  }
  return out;
}

WeightedGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i)
    edges.emplace_back(i, i + 1);
  return {n, std::move(edges), {}, "P_" + std::to_string(n)};
}

WeightedGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      edges.emplace_back(i, j);
  return {n, std::move(edges), {}, "K_" + std::to_string(n)};
}

WeightedGraph cycle_graph(std::size_t n) {
  if (n < 3)
    throw StructuralError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.emplace_back(i, (i + 1) % n);
  return {n, std::move(edges), {}, "C_" + std::to_string(n)};
}

WeightedGraph edgeless_graph(std::size_t n) { return {n, {}, {}, "E_" + std::to_string(n)}; }

WeightedGraph disjoint_union(const WeightedGraph &a, const WeightedGraph &b) {
  const auto shift = a.vertex_count();
  std::vector<Edge> edges = a.edges();
  for (const auto &[u, v] : b.edges())
    edges.emplace_back(u + shift, v + shift);
  if (a.has_real_weights() != b.has_real_weights())
    throw StructuralError("disjoint_union of exact and real-weighted graphs");
  if (a.has_real_weights()) {
    auto wa = a.real_weights();
    wa.insert(wa.end(), b.real_weights().begin(), b.real_weights().end());
    return WeightedGraph::with_real_weights(shift + b.vertex_count(), std::move(edges), std::move(wa));
  }
  std::vector<ExactValue> ws = a.exact_weights();
  ws.insert(ws.end(), b.exact_weights().begin(), b.exact_weights().end());
  return {shift + b.vertex_count(), std::move(edges), std::move(ws)};
}

} // namespace misembed
