#pragma once

#include "misembed/crossing_lattice.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace misembed {

enum class TiePolicy {
  Pessimistic, ///< lowest r among the nearest states
  Optimistic,  ///< highest r
  First,       ///< first nearest state in IS(G) order (ascending bit vector)
  Last,        ///< last nearest state in IS(G) order
};

std::string to_string(TiePolicy p);
TiePolicy parse_tie_policy(const std::string &s);

/// r = |S| / |MIS| for an unweighted source graph, exact.
Rational approx_ratio(std::size_t selected, std::size_t mis_size);
/// Requires s independent; computes |MIS| with the solver.
Rational approx_ratio(const WeightedGraph &g, const Configuration &s);
/// Host-side ratio 1 - (E - E_MWIS) / |MWIS_CL| at the lattice's w.
Rational host_ratio(const ExactValue &delta_e, const ExactValue &mwis_weight, const Rational &w);

/// IS(G), the images f(IS(G)) and |MIS|, shared by every query on one lattice.
class InterpretationContext {
public:
  explicit InterpretationContext(const CrossingLattice &cl);

  const CrossingLattice &lattice() const { return *cl_; }
  const std::vector<Configuration> &sources() const { return sources_; }
  const std::vector<Configuration> &images() const { return images_; }
  std::size_t mis_size() const { return mis_size_; }
  /// Host MWIS weight, base + 2w|MIS|.
  ExactValue mwis_weight() const;

private:
  const CrossingLattice *cl_;
  std::vector<Configuration> sources_;
  std::vector<Configuration> images_;
  std::size_t mis_size_ = 0;
};

struct DistanceResult {
  std::size_t d = 0;
  /// Source-side states S with Hamming(s_host, f(S)) = d, in IS(G) order.
  std::vector<Configuration> nearest_set;
  Rational r{0};
  bool tie = false;
};

DistanceResult distance_bruteforce(const InterpretationContext &ctx, const Configuration &s_host,
                                   TiePolicy policy = TiePolicy::Pessimistic);

/// Distance to the nearest interpretable state as a QUBO over the chain
/// states n_p:
///   d(n) = C + sum_p D_p n_p + sum_{p<q} Q_pq n_p n_q + sum_{(p,q) in E} Qbar_pq n_p n_q.
/// Q_pq collects the quadratic part of every crossing's four-term gadget
/// expansion; Qbar is a pure penalty larger than any attainable distance.
struct QuboInstance {
  std::int64_t c = 0;
  std::vector<std::int64_t> d_lin;
  struct Term {
    std::size_t p, q;
    std::int64_t value;
  };
  std::vector<Term> quad;
  std::vector<Term> penalty;

  /// Hamming distances of chain p to its unselected / selected pattern.
  std::vector<std::int64_t> d0, d1;
  /// Per crossing (cl.crossings order), distance of the gadget vertices to
  /// the canonical (a, b) pattern at index 2a + b. For edge crossings the
  /// (1, 1) entry is set to 0; the penalty excludes it.
  std::vector<std::array<std::int64_t, 4>> dpq;

  std::size_t n() const { return d_lin.size(); }
  std::int64_t evaluate(const Configuration &assignment) const;
};

QuboInstance build_qubo(const CrossingLattice &cl, const Configuration &s_host);

struct QuboSolution {
  Configuration assignment;
  std::int64_t value = 0;
};

/// Exact minimum; exhaustive up to `exhaustive_limit` variables, branch and
/// bound above. Ties resolve to the smallest assignment.
QuboSolution solve_qubo(const QuboInstance &q, std::size_t exhaustive_limit = 20,
                        std::uint64_t node_budget = 1'000'000'000);

/// Shortcut for gadget-free lattices: sum_p d_p^0 minus the MWIS of G
/// restricted to chains with d_p^0 > d_p^1, weighted by d_p^0 - d_p^1.
std::int64_t qubo_mwis_shortcut(const CrossingLattice &cl, const QuboInstance &q);

nlohmann::json qubo_to_json(const QuboInstance &q);

struct DeselectResult {
  Configuration s;
  Rational r{0};
  /// Chains with at least one domain wall.
  std::vector<std::size_t> defective_chains;
  /// Edges of G found with both chains selected; the higher index was dropped.
  std::vector<Edge> conflicts;
};

/// Chains with walls become unselected, defect-free selected chains stay
/// selected, then edge conflicts drop the higher-index endpoint. Gadget
/// defects between defect-free chains are ignored (the gadget is
/// re-canonicalized). Linear in the host size.
DeselectResult deselect(const CrossingLattice &cl, const Configuration &s_host, std::size_t mis_size);

struct BoundCheck {
  Rational r_actual{0};
  /// 1 - dE / (2w |MIS|), unclamped.
  Rational r_bound{0};
  bool ok = false;
  bool saturated = false;
};

/// r >= 1 - (E(S) - E_MWIS) / (2w |MIS|), decided with integer arithmetic.
BoundCheck deselection_bound_check(const CrossingLattice &cl, const Configuration &s_host,
                                   const ExactValue &delta_e, std::size_t mis_size);

/// Per-state annotations written to the states CSV.
struct Annotation {
  std::size_t d = 0;
  std::size_t l = 0;
  Rational r_distance{0};
  Rational r_deselect{0};
  bool tie = false;
  bool bound_ok = true;
};

/// Float-mode records skip the bound check (bound_ok stays true).
Annotation annotate(const InterpretationContext &ctx, const StateRecord &record, const Energy &e_mwis,
                    TiePolicy policy);

} // namespace misembed
