#pragma once

#include "misembed/graph.hpp"

#include <json.hpp>

#include <cstddef>
#include <vector>

namespace misembed {

/// W_w on P_length (length even, >= 2): v_1 = 1/2 + w, v_length = 1/2 - w,
/// interior vertices 1.
std::vector<ExactValue> chain_profile(std::size_t length);

/// Single-vertex graph embedded into P_2N with the W_w profile.
struct PathEmbedding {
  std::size_t n_half = 0;
  Rational w{1, 8};
  WeightedGraph host;
  /// Odd vertices v_1, v_3, ... (0-based indices 0, 2, ...).
  Configuration f_selected;
  /// Even vertices v_2, v_4, ...
  Configuration f_unselected;

  std::size_t length() const { return 2 * n_half; }
};

PathEmbedding build_path_embedding(std::size_t n_half, const Rational &w);

/// Domain walls of one path: pairs of consecutive unselected vertices.
/// Position i (0-based) marks the pair (chain[i], chain[i + 1]).
struct DefectReport {
  std::vector<std::size_t> wall_positions;
  std::size_t wall_count() const { return wall_positions.size(); }
};

DefectReport find_domain_walls(const PathEmbedding &pe, const Configuration &s);
/// Walls along `chain`, an ordered list of vertices of the graph indexed by `s`.
DefectReport find_domain_walls(const std::vector<Vertex> &chain, const Configuration &s);

enum class Nearest { Selected, Unselected, Tie };

struct PathDistance {
  std::size_t d = 0;
  Nearest nearest = Nearest::Unselected;
  std::size_t to_selected = 0;
  std::size_t to_unselected = 0;
};

PathDistance path_distance(const PathEmbedding &pe, const Configuration &s);
/// Hamming distances of the chain slice to its two antiferromagnetic patterns.
PathDistance path_distance(const std::vector<Vertex> &chain, const Configuration &s);

/// pi(n; mu, nu) = (n + 1)^mu * nu^n. Throws StructuralError for mu < 0 or nu < 1.
double penalty(std::size_t n, double mu, double nu);

/// Distance of v_i (1-based) to the endpoints of P_2N, min(i - 1, 2N - i).
/// Both endpoints sit at distance 0, so the penalty leaves the 1/2 +- w
/// weights untouched and the profile stays mirror symmetric.
std::size_t endpoint_distance(std::size_t i, std::size_t n_half);

/// W_w(v_i) * pi(d_e(v_i); mu, nu) as real weights.
WeightedGraph modified_path_profile(const PathEmbedding &pe, double mu, double nu);

nlohmann::json path_annotation(const PathEmbedding &pe);

} // namespace misembed
