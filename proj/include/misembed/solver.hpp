#pragma once

#include "misembed/graph.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace misembed {

using BigInt = boost::multiprecision::cpp_int;

enum class VertexOrder {
  Natural,          ///< host vertex index order
  DegreeDescending, ///< stable sort by decreasing degree
};

struct SolverOptions {
  std::uint64_t node_budget = 1'000'000'000;
  std::uint64_t state_budget = 10'000'000;
  VertexOrder order = VertexOrder::Natural;
  /// Absolute slack for window membership in float mode.
  double float_tolerance = 1e-9;
  /// Vertex sequences bounded by an exact path DP instead of cliques, e.g.
  /// the chains of an embedding. Only edges actually present between
  /// consecutive entries are used, so any disjoint sequences are admissible.
  std::vector<std::vector<Vertex>> path_hint;
};

/// Energy E = -W(S). The exact lattice value is present in exact mode.
struct Energy {
  double value = 0.0;
  std::optional<ExactValue> exact;
};

struct StateRecord {
  Configuration config;
  Energy energy;
};

struct EnergyWindow {
  Rational delta_e_max{0};
  Energy e_mwis;
};

struct MwisResult {
  Configuration config;
  /// Optimal total weight, |MWIS| (= -E_MWIS).
  Energy weight;
  std::uint64_t nodes = 0;
};

struct LowEnergySpectrum {
  EnergyWindow window;
  MwisResult ground;
  /// Canonical order: energy ascending, then configuration ascending.
  std::vector<StateRecord> states;
  std::uint64_t nodes = 0;
};

/// Exact maximum-weight independent set. Among degenerate optima the
/// smallest configuration in canonical order is returned. Throws
/// BudgetExceeded instead of returning a possibly suboptimal set.
MwisResult solve_mwis(const WeightedGraph &g, const WeightMode &mode, const SolverOptions &options = {});

/// Every independent set with E - E_MWIS <= delta_e_max, exactly once, in
/// canonical order. Computes E_MWIS first.
LowEnergySpectrum enumerate_low_energy(const WeightedGraph &g, const WeightMode &mode, const Rational &delta_e_max,
                                       const SolverOptions &options = {});
/// Same, with a known ground energy.
LowEnergySpectrum enumerate_low_energy(const WeightedGraph &g, const WeightMode &mode, const EnergyWindow &window,
                                       const SolverOptions &options = {});

/// Energy of one configuration, computed in vertex order.
Energy energy_of(const WeightedGraph &g, const Configuration &s, const WeightMode &mode);

/// E - E_MWIS as a double.
double delta_energy(const Energy &e, const Energy &e_mwis);
/// Exact E - E_MWIS; requires exact energies.
ExactValue delta_energy_exact(const Energy &e, const Energy &e_mwis);

/// Canonical record order used by every enumeration output.
bool canonical_less(const StateRecord &a, const StateRecord &b, const WeightMode &mode);

/// Number of independent sets including the empty set.
BigInt count_all_is(const WeightedGraph &g);

/// Upper bound used by the search: greedy clique partition of `vertices`
/// (in the given order), summing each clique's largest positive weight.
/// Exposed for admissibility tests.
double clique_partition_bound(const WeightedGraph &g, const std::vector<double> &weights,
                              const std::vector<Vertex> &vertices);

} // namespace misembed
