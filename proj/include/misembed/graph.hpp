#pragma once

#include "misembed/configuration.hpp"
#include "misembed/exact_value.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace misembed {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// How weights become numbers. Exact mode keeps every weight and energy on
/// the a/2 + b*w lattice for a rational w. Float mode is required once a
/// penalty modulation (mu, nu) pushes weights off the lattice.
struct WeightMode {
  enum class Kind { Exact, Float };

  Kind kind = Kind::Exact;
  Rational w{1, 8};
  double mu = 0.0;
  double nu = 1.0;

  static WeightMode exact(Rational w) { return {Kind::Exact, w, 0.0, 1.0}; }
  static WeightMode real(Rational w, double mu = 0.0, double nu = 1.0) { return {Kind::Float, w, mu, nu}; }

  bool is_exact() const { return kind == Kind::Exact; }
  double w_value() const { return w.to_double(); }
  /// w at or above 1/2 lets some defects lower the energy of interpretable states.
  bool soft_ordering_regime() const { return w >= Rational(1, 2); }
};

/// Simple undirected vertex-weighted graph. Immutable after construction.
///
/// Weights are lattice values (symbolic in w) unless the graph was built with
/// real weights, in which case it can only be evaluated in float mode.
class WeightedGraph {
public:
  WeightedGraph() = default;
  /// Unit weights when `weights` is empty. Throws StructuralError on
  /// self-loops, duplicate edges or out-of-range endpoints.
  WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges, std::vector<ExactValue> weights = {},
                std::string name = {});

  static WeightedGraph with_real_weights(std::size_t vertex_count, std::vector<Edge> edges,
                                         std::vector<double> weights, std::string name = {});

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge> &edges() const { return edges_; }
  const std::vector<Vertex> &neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const { return adjacency_bits_[u].test(v); }

  bool has_real_weights() const { return real_weights_.has_value(); }
  const std::vector<ExactValue> &exact_weights() const;
  const std::vector<double> &real_weights() const { return *real_weights_; }
  const ExactValue &weight(Vertex v) const { return exact_weights()[v]; }

  /// Numeric weights under `mode`. Real-weighted graphs require float mode.
  std::vector<double> numeric_weights(const WeightMode &mode) const;
  /// Exact weights scaled by 2*w.den; requires an exact-weighted graph.
  std::vector<std::int64_t> scaled_weights(const Rational &w) const;

  bool is_unit_weighted() const;
  const std::string &name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Vertex-induced subgraph; `keep` lists the retained vertices in their new order.
  WeightedGraph induced(const std::vector<Vertex> &keep) const;
  /// Same topology with new per-vertex weights.
  WeightedGraph reweighted(std::vector<ExactValue> weights) const;
  WeightedGraph reweighted_real(std::vector<double> weights) const;

  friend bool operator==(const WeightedGraph &a, const WeightedGraph &b);

private:
  void build_adjacency();

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<ExactValue> weights_;
  std::optional<std::vector<double>> real_weights_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Configuration> adjacency_bits_;
  std::string name_;
};

/// Sum of the weights of the selected vertices (lattice value).
ExactValue total_weight(const WeightedGraph &g, const Configuration &s);
/// Numeric weight of the selected vertices under `mode`.
double total_weight(const WeightedGraph &g, const Configuration &s, const WeightMode &mode);

/// True iff no edge has both endpoints selected.
bool is_independent(const WeightedGraph &g, const Configuration &s);

/// Every independent set of `g`, in increasing numeric order of the bit
/// vector. Intended for problem graphs (n <= 30).
std::vector<Configuration> all_independent_sets(const WeightedGraph &g);

/// Common families.
WeightedGraph path_graph(std::size_t n);
WeightedGraph complete_graph(std::size_t n);
WeightedGraph cycle_graph(std::size_t n);
WeightedGraph edgeless_graph(std::size_t n);
/// Disjoint union; vertices of `b` are shifted by a.vertex_count().
WeightedGraph disjoint_union(const WeightedGraph &a, const WeightedGraph &b);

} // namespace misembed
