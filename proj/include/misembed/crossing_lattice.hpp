#pragma once

#include "misembed/path_embedding.hpp"
#include "misembed/solver.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace misembed {

enum class Variant { NonPlanar, Gadgeted };
enum class CrossingKind { WithEdge, WithoutEdge };

std::string to_string(Variant v);
Variant parse_variant(const std::string &s);

/// Gadget vertex g_ab: selected in the canonical state where chain p is in
/// state a and chain q in state b (1 = selected).
struct GadgetVertex {
  int a = 0;
  int b = 0;
  Vertex id = 0;

  std::string role() const { return "g" + std::to_string(a) + std::to_string(b); }
};

/// Intersection of chains p < q (0-based problem vertices).
struct CrossingSite {
  std::size_t p = 0;
  std::size_t q = 0;
  CrossingKind kind = CrossingKind::WithoutEdge;
  /// 1-based slot used on each chain.
  std::size_t slot_p = 0;
  std::size_t slot_q = 0;
  /// Host ids of the flanking vertices {v_2k-1, v_2k+1} and {v_2k, v_2k+2}.
  std::array<Vertex, 2> odd_p{}, even_p{}, odd_q{}, even_q{};
  std::vector<GadgetVertex> gadgets;
  /// Direct chain edge of the non-planar variant.
  std::optional<Edge> direct_edge;
  std::size_t b_e = 0;

  /// Canonical gadget vertex for chain states (a, b), if one exists.
  std::optional<Vertex> canonical(int a, int b) const;
};

/// Host graph of the crossing-lattice embedding of an unweighted graph G.
///
/// Host ids: chain p holds ids p*(2N+2) ... p*(2N+2)+2N+1 for v_1..v_2N+2,
/// followed by all gadget vertices in crossing order. Crossings are stored
/// for every pair p < q in lexicographic order.
struct CrossingLattice {
  WeightedGraph source;
  Variant variant = Variant::Gadgeted;
  Rational w{1, 8};
  WeightedGraph host;
  std::vector<std::vector<Vertex>> chains;
  std::vector<CrossingSite> crossings;
  /// Weight of embed(empty set).
  ExactValue base_weight;

  enum class Role { Chain, Gadget };
  struct VertexInfo {
    Role role = Role::Chain;
    /// Chain index or crossing index.
    std::size_t owner = 0;
    /// 0-based position along the chain; unused for gadgets.
    std::size_t position = 0;
  };
  std::vector<VertexInfo> info;

  std::size_t n() const { return chains.size(); }
  std::size_t chain_length() const { return 2 * n() + 2; }
  const CrossingSite &site(std::size_t p, std::size_t q) const;
  std::size_t site_index(std::size_t p, std::size_t q) const;
};

/// Chains plus one direct odd-odd edge per edge of G.
CrossingLattice build_nonplanar_cl(const WeightedGraph &g, const Rational &w);
/// Chains plus a weight-2 4-clique per non-edge and a weight-1 3-clique per
/// edge. Runs the cheap ladder and gadget-constancy checks (G2, G3) over
/// IS(G) when G is small and throws InvariantViolation on failure.
CrossingLattice build_gadgeted_cl(const WeightedGraph &g, const Rational &w);
CrossingLattice build_cl(const WeightedGraph &g, const Rational &w, Variant variant);

/// f: chain p in f_selected iff p in s, canonical gadget vertices.
Configuration embed(const CrossingLattice &cl, const Configuration &s);

/// Chain pattern of one chain: 1 selected, 0 unselected, nullopt otherwise.
std::optional<int> chain_state(const CrossingLattice &cl, std::size_t p, const Configuration &s_host);

struct Interpretation {
  /// f^-1(s_host) when s_host is interpretable.
  std::optional<Configuration> source_state;
  std::vector<DefectReport> chain_defects;
  /// Indices into cl.crossings whose gadget pattern is not canonical (only
  /// evaluated when both chains are antiferromagnetic).
  std::vector<std::size_t> noncanonical_crossings;

  bool interpretable() const { return source_state.has_value(); }
  std::size_t wall_count() const;
};

Interpretation interpret(const CrossingLattice &cl, const Configuration &s_host);

/// min(max(P,Q) - 1, N - min(P,Q)) with 1-based P, Q.
std::size_t block_distance(std::size_t n, std::size_t p1, std::size_t q1);
std::size_t block_distance(const CrossingLattice &cl, const CrossingSite &site);
/// Block distance of every host vertex. Chain vertices v_2k, v_2k+1 belong
/// to the block of slot k (k < N) or to the diagonal block (k = N); v_1 and
/// v_2N+2 are boundary vertices with b_e = 0.
std::vector<std::size_t> vertex_block_distances(const CrossingLattice &cl);

/// W_w * pi(b_e; mu, nu) as real weights.
WeightedGraph modified_cl_profile(const CrossingLattice &cl, double mu, double nu);

struct CalibrationReport {
  bool g1 = false, g2 = false, g3 = false, g4 = false;
  /// Whether G4 demands equality (G has a vertex outside some MIS).
  bool g4_equality_expected = false;
  std::optional<ExactValue> min_noninterpretable_gap;
  std::vector<std::string> failures;

  bool ok() const { return g1 && g2 && g3 && g4; }
};

/// Exhaustive check of the embedding contract: (G1) the host MWIS set is
/// exactly f(MIS(G)); (G2) interpretable weights are base + 2w|S|; (G3) every
/// crossing contributes a constant gadget weight over f(IS(G)); (G4) the
/// smallest gap of a non-interpretable state is 1/2 - w (or at least that
/// when every vertex of G lies in every MIS).
CalibrationReport calibrate(const CrossingLattice &cl, const SolverOptions &options = {});

nlohmann::json embedding_to_json(const CrossingLattice &cl);
CrossingLattice embedding_from_json(const nlohmann::json &j);

} // namespace misembed
