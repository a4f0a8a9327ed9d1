#pragma once

#include "misembed/graph.hpp"
#include "misembed/solver.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace misembed {

/// One source edge replaced by the path u - inserted... - v.
struct SubdividedEdge {
  Edge source;
  std::vector<Vertex> inserted;

  /// u, inserted..., v.
  std::vector<Vertex> path() const;
};

/// Even-edge subdivision. Host vertices 0..n-1 are the source vertices;
/// inserted vertices follow in source edge order.
struct SubdivisionEmbedding {
  WeightedGraph source;
  WeightedGraph host;
  /// Only edges with a positive count.
  std::vector<SubdividedEdge> paths;
  /// Set when the weighted profile is applied.
  std::optional<Rational> w;
};

/// `counts[i]` vertices are inserted into source edge i (g.edges() order);
/// every count must be even. With `profile_w`, source vertices weigh 1/2 + w
/// and inserted vertices 1, so a violated edge (both endpoints selected)
/// costs 1 while a selected source vertex gains only 1/2 + w.
SubdivisionEmbedding subdivide(const WeightedGraph &g, const std::vector<std::size_t> &counts,
                               std::optional<Rational> profile_w = {});

/// Contracting every inserted path gives back the source graph.
WeightedGraph contract(const SubdivisionEmbedding &se);

struct ContractionResult {
  /// Source-vertex bits of the host state.
  Configuration s;
  /// Source edges with both endpoints selected, in edge order.
  std::vector<Edge> violations;
  /// `s` with the higher-index endpoint of each violation dropped.
  Configuration repaired;
  /// Domain walls summed over inserted paths.
  std::size_t walls = 0;
};

ContractionResult contract_interpret(const SubdivisionEmbedding &se, const Configuration &s_host);

/// k disjoint triangles {3i, 3i+1, 3i+2}; edge (3i, 3i+1) of each gets two
/// inserted vertices, so the host is k disjoint 5-cycles.
SubdivisionEmbedding triangle_family(std::size_t k, std::optional<Rational> profile_w = {});

struct PathologyReport {
  std::size_t k = 0;
  /// Number of maximum(-weight) independent sets of the host.
  BigInt n_mis = 0;
  /// Sum of violation counts over them.
  BigInt total_violations = 0;
  /// Expected violations under a uniform host optimum, reduced.
  BigInt expected_num = 0, expected_den = 1;
  /// Probability that a given cycle's inserted path carries a wall, reduced.
  BigInt wall_prob_num = 0, wall_prob_den = 1;
};

/// Exact, by listing every host optimum.
PathologyReport odd_cycle_pathology(std::size_t k, std::optional<Rational> profile_w = {});

void write_pathology_csv(std::ostream &out, const std::vector<PathologyReport> &reports);

} // namespace misembed
