#pragma once

#include "misembed/interpretation.hpp"
#include "misembed/polynomials.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace misembed {

/// Enumerated state with its interpretation columns.
struct AnnotatedState {
  StateRecord record;
  Annotation annotation;
};

/// Annotate every state of an enumerated lattice window.
std::vector<AnnotatedState> annotate_spectrum(const InterpretationContext &ctx, const LowEnergySpectrum &spectrum,
                                              TiePolicy policy = TiePolicy::Pessimistic);

/// Joint density of states over (E - E_MWIS, d), exact exponents.
struct JointDos {
  Rational w{1, 8};
  std::map<std::pair<ExactValue, std::size_t>, BigInt> counts;

  void add(const ExactValue &delta_e, std::size_t d, const BigInt &count = 1);
  BigInt total() const;
};

JointDos joint_dos(const std::vector<AnnotatedState> &states, const Energy &e_mwis, const Rational &w);

/// tau_d(E) on the grid of distinct energies (merged numerically at w):
/// the fraction of states in [E_MWIS, E] with distance at most d.
struct TauCurve {
  Rational w{1, 8};
  /// Ascending; each energy is the lattice-smallest representative of its level.
  std::vector<ExactValue> energies;
  /// cumulative[i][d]: states with energy <= energies[i] and distance <= d,
  /// for d = 0..d_max; cumulative[i][d_max] is the window total.
  std::vector<std::vector<BigInt>> cumulative;
  std::size_t d_max = 0;

  /// Reduced fraction (numerator, denominator); d beyond d_max gives 1.
  std::pair<BigInt, BigInt> tau(std::size_t i, std::size_t d) const;
  double tau_value(std::size_t i, std::size_t d) const;
};

/// Throws StructuralError on an empty distribution.
TauCurve build_tau(const JointDos &dos);

enum class FitQuality { Ok, InsufficientPoints, NonDecaying };
std::string to_string(FitQuality q);

struct DecayFit {
  std::size_t d = 0;
  FitQuality quality = FitQuality::InsufficientPoints;
  /// Characteristic energy -1/slope and its standard error (delta method).
  double e_c = 0.0;
  double stderr_e_c = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t n_points = 0;
};

/// Unweighted least squares of ln tau against E over points with tau in (0, 1).
DecayFit fit_decay(const std::vector<std::pair<double, double>> &points, double window_lo, double window_hi);
/// E_c(d) on [window_lo, window_hi]; defaults: from the first energy with
/// tau_0 < 1 to the top of the grid.
DecayFit fit_ec(const TauCurve &curve, std::size_t d, std::optional<double> window_lo = {},
                std::optional<double> window_hi = {});

/// States grouped by nearest domain-wall peak l, |dE - l/2| <= 1/4.
struct PeakBin {
  std::size_t l = 0;
  std::size_t count = 0;
  std::map<std::size_t, std::size_t> d_histogram;
  std::map<Rational, std::size_t> r_histogram;
};

struct PeakWindows {
  std::vector<PeakBin> bins;
  /// States farther than 1/4 from every peak.
  std::size_t unbinned = 0;
  /// w above 1/10 merges neighbouring peaks; binning is still performed.
  bool wide_bias_warning = false;
};

PeakWindows peak_windows(const std::vector<AnnotatedState> &states, const Energy &e_mwis, const Rational &w);

/// Total-variation distance between two discrete distributions given as counts.
double tv_distance(const std::map<std::int64_t, BigInt> &a, const std::map<std::int64_t, BigInt> &b);
/// The DoS of a weight polynomial as counts per dE below its top exponent at w.
std::map<ExactValue, BigInt> delta_dos(const GeneralizedPolynomial &p, const Rational &w);
/// Counts per dE of enumerated states.
std::map<ExactValue, BigInt> delta_dos(const std::vector<StateRecord> &states, const Energy &e_mwis);
/// Histogram of dE with bins of width 1/4: key floor(4 dE).
std::map<std::int64_t, BigInt> quarter_bins(const std::map<ExactValue, BigInt> &dos, const Rational &w,
                                            const Rational &delta_e_max);

/// Product of `power` weighted copies of P_{4N}: its symbolic DoS and the
/// joint (dE, d) distribution inside [0, delta_e_max], with d summed over
/// copies and measured per copy as the path distance.
struct PathProductDos {
  GeneralizedPolynomial dos;
  JointDos joint;
};

PathProductDos path_product_dos(std::size_t n, const Rational &w, std::size_t power, const Rational &delta_e_max);

/// Joint (dE, d) distribution of one weighted path P_{2N} over all its states.
JointDos path_joint_dos(std::size_t n_half, const Rational &w);
/// Exact convolution, keeping only dE <= delta_e_max (exact, since each
/// factor's dE is non-negative).
JointDos convolve(const JointDos &a, const JointDos &b, const Rational &delta_e_max);

/// Domain-wall prevalence per host vertex: a wall between chain vertices
/// v_i, v_{i+1} counts once for each of the two vertices.
struct LocalizationMap {
  std::vector<std::uint64_t> xi_raw;
  std::vector<double> xi_norm;
  std::vector<std::size_t> b_e;
  /// Share of all wall incidences on vertices with b_e >= ceil(max b_e / 2).
  double center_share = 0.0;
  bool degenerate = false;
};

LocalizationMap defect_localization(const CrossingLattice &cl, const std::vector<StateRecord> &states);

/// dE budget at modulation (mu, nu): 2 * W_mu / W_0, keeping (E - E_MWIS)
/// relative to the total host weight fixed, with budget 2 at mu = 0.
double energy_budget(const CrossingLattice &cl, double mu, double nu, double base = 2.0);

/// Mean ratios and threshold probabilities over cumulative windows [0, dE].
struct StrategyWindow {
  Rational delta_e{0};
  std::size_t count = 0;
  double mean_r_distance = 0.0;
  double mean_r_deselect = 0.0;
  /// P(r >= r0) per threshold, in `thresholds` order.
  std::vector<double> prob_distance;
  std::vector<double> prob_deselect;
};

struct StrategyComparison {
  std::vector<Rational> thresholds;
  std::vector<StrategyWindow> windows;
};

StrategyComparison strategy_comparison(const std::vector<AnnotatedState> &states, const Energy &e_mwis,
                                       const Rational &w, const std::vector<Rational> &window_edges,
                                       const std::vector<Rational> &thresholds = {Rational(2, 3), Rational(1)});

/// Summary of one enumerated and interpreted instance.
struct InstanceSummary {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string graph_hash;
  Rational delta_e_max{0};
  std::size_t states = 0;
  double mean_l = 0.0;
  std::optional<double> e_c0;
  /// Max over states of (1 - r_deselect) / (1 - r_CL), dE > 0 only.
  double max_amplification = 0.0;
  std::size_t bound_violations = 0;
};

/// Recomputes the deselection bound for every state.
InstanceSummary summarize_instance(const InterpretationContext &ctx, std::uint64_t seed, const Rational &delta_e_max,
                                   const std::vector<AnnotatedState> &states, const Energy &e_mwis);

struct ScalingReport {
  std::vector<InstanceSummary> instances;
  /// Per N: mean and population standard deviation of E_c(0) over seeds.
  std::map<std::size_t, std::pair<double, double>> e_c0_by_n;
  std::map<std::size_t, double> mean_l_by_n;
  std::map<std::size_t, double> max_amplification_by_n;
  /// Slope of ln(mean l) vs ln N; absent when fewer than two sizes have defects.
  std::optional<double> gamma_hat;
  std::size_t bound_violations = 0;
};

ScalingReport scaling_report(std::vector<InstanceSummary> instances);

/// FNV-1a of the canonical graph JSON, as 16 hex digits.
std::string graph_hash(const WeightedGraph &g);

void write_tau_csv(std::ostream &out, const TauCurve &curve);
void write_ecfit_csv(std::ostream &out, const std::vector<DecayFit> &fits);
void write_localization_csv(std::ostream &out, const LocalizationMap &map);
void write_compare_csv(std::ostream &out, const StrategyComparison &cmp);
void write_scaling_csv(std::ostream &out, const ScalingReport &report);

} // namespace misembed
