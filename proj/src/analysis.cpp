#include "misembed/analysis.hpp"

#include "misembed/errors.hpp"
#include "misembed/graph_io.hpp"
#include "misembed/states_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>

namespace misembed {

namespace {

bool within(const ExactValue &delta_e, const Rational &bound, const Rational &w) {
  return delta_e.evaluate(w) <= bound;
}

double ratio(const BigInt &num, const BigInt &den) {
  // Both may exceed double range only far beyond desk scale; scale down first.
  const auto bits = static_cast<long>(boost::multiprecision::msb(den));
  if (bits < 900)
    return num.convert_to<double>() / den.convert_to<double>();
  const auto shift = static_cast<unsigned>(bits - 900);
  return BigInt(num >> shift).convert_to<double>() / BigInt(den >> shift).convert_to<double>();
}

struct Ols {
  double slope = 0.0, intercept = 0.0, stderr_slope = 0.0;
};

Ols least_squares(const std::vector<std::pair<double, double>> &pts) {
  const double n = static_cast<double>(pts.size());
  double sx = 0.0, sy = 0.0;
  for (const auto &[x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto &[x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  Ols r;
  if (sxx == 0.0)
    return r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  if (pts.size() > 2) {
    double ssr = 0.0;
    for (const auto &[x, y] : pts) {
      const double e = y - (r.intercept + r.slope * x);
      ssr += e * e;
    }
    r.stderr_slope = std::sqrt(ssr / (n - 2.0) / sxx);
  }
  return r;
}

} // namespace

std::vector<AnnotatedState> annotate_spectrum(const InterpretationContext &ctx, const LowEnergySpectrum &spectrum,
                                              TiePolicy policy) {
  std::vector<AnnotatedState> out;
  out.reserve(spectrum.states.size());
  for (const auto &rec : spectrum.states)
    out.push_back({rec, annotate(ctx, rec, spectrum.window.e_mwis, policy)});
  return out;
}

void JointDos::add(const ExactValue &delta_e, std::size_t d, const BigInt &count) {
  if (count != 0)
    counts[{delta_e, d}] += count;
}

BigInt JointDos::total() const {
  BigInt t = 0;
  for (const auto &[k, c] : counts)
    t += c;
  return t;
}

JointDos joint_dos(const std::vector<AnnotatedState> &states, const Energy &e_mwis, const Rational &w) {
  JointDos dos;
  dos.w = w;
  for (const auto &s : states)
    dos.add(delta_energy_exact(s.record.energy, e_mwis), s.annotation.d);
  return dos;
}

std::pair<BigInt, BigInt> TauCurve::tau(std::size_t i, std::size_t d) const {
  const auto &row = cumulative.at(i);
  BigInt num = d >= d_max ? row[d_max] : row[d];
  BigInt den = row[d_max];
  const BigInt g = gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

double TauCurve::tau_value(std::size_t i, std::size_t d) const {
  const auto &row = cumulative.at(i);
  return ratio(d >= d_max ? row[d_max] : row[d], row[d_max]);
}

TauCurve build_tau(const JointDos &dos) {
  if (dos.counts.empty())
    throw StructuralError("build_tau: empty distribution");
  TauCurve curve;
  curve.w = dos.w;
  struct Level {
    ExactValue representative;
    std::map<std::size_t, BigInt> by_d;
  };
  std::map<Rational, Level> levels;
  for (const auto &[key, c] : dos.counts) {
    const auto &[e, d] = key;
    curve.d_max = std::max(curve.d_max, d);
    auto [it, inserted] = levels.try_emplace(e.evaluate(dos.w), Level{e, {}});
    if (e < it->second.representative)
      it->second.representative = e;
    it->second.by_d[d] += c;
  }
  std::vector<BigInt> running(curve.d_max + 1, 0);
  for (const auto &[value, level] : levels) {
    std::vector<BigInt> add(curve.d_max + 1, 0);
    for (const auto &[d, c] : level.by_d)
      add[d] += c;
    BigInt prefix = 0;
    for (std::size_t d = 0; d <= curve.d_max; ++d) {
      prefix += add[d];
      running[d] += prefix;
    }
    curve.energies.push_back(level.representative);
    curve.cumulative.push_back(running);
  }
  return curve;
}

std::string to_string(FitQuality q) {
  switch (q) {
  case FitQuality::Ok:
    return "ok";
  case FitQuality::InsufficientPoints:
    return "insufficient_points";
  case FitQuality::NonDecaying:
    return "non_decaying";
  }
  return "unknown";
}

DecayFit fit_decay(const std::vector<std::pair<double, double>> &points, double window_lo, double window_hi) {
  DecayFit fit;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  std::vector<std::pair<double, double>> pts;
  for (const auto &[e, tau] : points)
    if (e >= window_lo && e <= window_hi && tau > 0.0 && tau < 1.0)
      pts.emplace_back(e, std::log(tau));
  fit.n_points = pts.size();
  if (pts.size() < 4)
    return fit;
  const auto ols = least_squares(pts);
  fit.slope = ols.slope;
  fit.intercept = ols.intercept;
  if (!(ols.slope < 0.0)) {
    fit.quality = FitQuality::NonDecaying;
    return fit;
  }
  fit.quality = FitQuality::Ok;
  fit.e_c = -1.0 / ols.slope;
  fit.stderr_e_c = ols.stderr_slope / (ols.slope * ols.slope);
  return fit;
}

DecayFit fit_ec(const TauCurve &curve, std::size_t d, std::optional<double> window_lo,
                std::optional<double> window_hi) {
  const double w = curve.w.to_double();
  std::vector<std::pair<double, double>> pts;
  std::optional<double> first_defect;
  for (std::size_t i = 0; i < curve.energies.size(); ++i) {
    const double e = curve.energies[i].evaluate(w);
    pts.emplace_back(e, curve.tau_value(i, d));
    if (!first_defect && curve.cumulative[i][0] < curve.cumulative[i][curve.d_max])
      first_defect = e;
  }
  const double lo = window_lo ? *window_lo : first_defect.value_or(pts.back().first);
  const double hi = window_hi ? *window_hi : pts.back().first;
  auto fit = fit_decay(pts, lo, hi);
  fit.d = d;
  return fit;
}

PeakWindows peak_windows(const std::vector<AnnotatedState> &states, const Energy &e_mwis, const Rational &w) {
  PeakWindows out;
  out.wide_bias_warning = w > Rational(1, 10);
  std::map<std::size_t, PeakBin> bins;
  for (const auto &s : states) {
    const auto de = delta_energy_exact(s.record.energy, e_mwis).evaluate(w);
    // Nearest half-integer l/2 and its distance, exactly: l = round(2 dE).
    const Rational twice = de * Rational(2);
    std::int64_t l = twice.num / twice.den;
    if (Rational(2) * (twice - Rational(l)) > Rational(1))
      ++l;
    const Rational off = de - Rational(l, 2);
    const Rational abs_off = off < Rational(0) ? Rational(0) - off : off;
    if (l < 0 || abs_off > Rational(1, 4)) {
      ++out.unbinned;
      continue;
    }
    auto &bin = bins[static_cast<std::size_t>(l)];
    bin.l = static_cast<std::size_t>(l);
    ++bin.count;
    ++bin.d_histogram[s.annotation.d];
    ++bin.r_histogram[s.annotation.r_distance];
  }
  for (auto &[l, b] : bins)
    out.bins.push_back(std::move(b));
  return out;
}

double tv_distance(const std::map<std::int64_t, BigInt> &a, const std::map<std::int64_t, BigInt> &b) {
  BigInt ta = 0, tb = 0;
  for (const auto &[k, c] : a)
    ta += c;
  for (const auto &[k, c] : b)
    tb += c;
  if (ta == 0 || tb == 0)
    throw StructuralError("tv_distance: empty distribution");
  std::map<std::int64_t, std::pair<BigInt, BigInt>> joint;
  for (const auto &[k, c] : a)
    joint[k].first = c;
  for (const auto &[k, c] : b)
    joint[k].second = c;
  // sum |a/ta - b/tb| / 2, exact numerator over ta * tb.
  BigInt num = 0;
  for (const auto &[k, ab] : joint) {
    BigInt diff = ab.first * tb - ab.second * ta;
    num += diff < 0 ? BigInt(-diff) : diff;
  }
  return ratio(num, BigInt(2 * ta * tb));
}

std::map<ExactValue, BigInt> delta_dos(const GeneralizedPolynomial &p, const Rational &w) {
  std::map<ExactValue, BigInt> out;
  if (p.is_zero())
    return out;
  ExactValue top = p.terms().begin()->first;
  for (const auto &[e, c] : p.terms())
    if (compare_at(e, top, w) > 0)
      top = e;
  for (const auto &[e, c] : p.terms())
    out[top - e] += c;
  return out;
}

std::map<ExactValue, BigInt> delta_dos(const std::vector<StateRecord> &states, const Energy &e_mwis) {
  std::map<ExactValue, BigInt> out;
  for (const auto &s : states)
    out[delta_energy_exact(s.energy, e_mwis)] += 1;
  return out;
}

std::map<std::int64_t, BigInt> quarter_bins(const std::map<ExactValue, BigInt> &dos, const Rational &w,
                                            const Rational &delta_e_max) {
  std::map<std::int64_t, BigInt> out;
  for (const auto &[e, c] : dos) {
    const auto v = e.evaluate(w);
    if (v > delta_e_max)
      continue;
    const Rational q = v * Rational(4);
    std::int64_t k = q.num / q.den;
    if (q.num < 0 && q.num % q.den != 0)
      --k;
    out[k] += c;
  }
  return out;
}

JointDos path_joint_dos(std::size_t n_half, const Rational &w) {
  const auto pe = build_path_embedding(n_half, w);
  const auto &weights = pe.host.exact_weights();
  const auto len = pe.length();
  const ExactValue top = total_weight(pe.host, pe.f_selected);
  JointDos dos;
  dos.w = w;
  // Walk every independent set, tracking the weight and both Hamming distances.
  struct Frame {
    std::size_t i;
    bool prev;
    ExactValue weight;
    std::size_t to_sel, to_unsel;
  };
  std::vector<Frame> stack{{0, false, ExactValue(), 0, 0}};
  while (!stack.empty()) {
    const auto f = stack.back();
    stack.pop_back();
    if (f.i == len) {
      dos.add(top - f.weight, std::min(f.to_sel, f.to_unsel));
      continue;
    }
    const bool sel_bit = pe.f_selected.test(f.i);
    const bool unsel_bit = pe.f_unselected.test(f.i);
    stack.push_back({f.i + 1, false, f.weight, f.to_sel + (sel_bit ? 1 : 0), f.to_unsel + (unsel_bit ? 1 : 0)});
    if (!f.prev)
      stack.push_back(
          {f.i + 1, true, f.weight + weights[f.i], f.to_sel + (sel_bit ? 0 : 1), f.to_unsel + (unsel_bit ? 0 : 1)});
  }
  return dos;
}

JointDos convolve(const JointDos &a, const JointDos &b, const Rational &delta_e_max) {
  JointDos out;
  out.w = a.w;
  for (const auto &[ka, ca] : a.counts) {
    if (!within(ka.first, delta_e_max, a.w))
      continue;
    for (const auto &[kb, cb] : b.counts) {
      const auto e = ka.first + kb.first;
      if (within(e, delta_e_max, a.w))
        out.add(e, ka.second + kb.second, ca * cb);
    }
  }
  return out;
}

PathProductDos path_product_dos(std::size_t n, const Rational &w, std::size_t power, const Rational &delta_e_max) {
  if (n == 0 || power == 0)
    throw StructuralError("path_product_dos: n and power must be positive");
  PathProductDos out;
  out.dos = ip_weighted_path(2 * n).pow(power);
  JointDos single = path_joint_dos(2 * n, w);
  JointDos windowed;
  windowed.w = w;
  for (const auto &[k, c] : single.counts)
    if (within(k.first, delta_e_max, w))
      windowed.add(k.first, k.second, c);
  out.joint = windowed;
  for (std::size_t i = 1; i < power; ++i)
    out.joint = convolve(out.joint, windowed, delta_e_max);
  return out;
}

LocalizationMap defect_localization(const CrossingLattice &cl, const std::vector<StateRecord> &states) {
  const auto n = cl.host.vertex_count();
  LocalizationMap map;
  map.xi_raw.assign(n, 0);
  map.b_e = vertex_block_distances(cl);
  for (const auto &rec : states)
    for (const auto &chain : cl.chains)
      for (auto i : find_domain_walls(chain, rec.config).wall_positions) {
        ++map.xi_raw[chain[i]];
        ++map.xi_raw[chain[i + 1]];
      }
  const auto [lo, hi] = std::minmax_element(map.xi_raw.begin(), map.xi_raw.end());
  map.xi_norm.assign(n, 0.0);
  if (n == 0 || *lo == *hi) {
    map.degenerate = true;
  } else {
    const double span = static_cast<double>(*hi - *lo);
    for (std::size_t v = 0; v < n; ++v)
      map.xi_norm[v] = static_cast<double>(map.xi_raw[v] - *lo) / span;
  }
  const std::size_t max_be = map.b_e.empty() ? 0 : *std::max_element(map.b_e.begin(), map.b_e.end());
  const std::size_t threshold = (max_be + 1) / 2;
  std::uint64_t total = 0, center = 0;
  for (std::size_t v = 0; v < n; ++v) {
    total += map.xi_raw[v];
    if (max_be > 0 && map.b_e[v] >= threshold)
      center += map.xi_raw[v];
  }
  map.center_share = total == 0 ? 0.0 : static_cast<double>(center) / static_cast<double>(total);
  return map;
}

double energy_budget(const CrossingLattice &cl, double mu, double nu, double base) {
  const auto plain = cl.host.numeric_weights(WeightMode::exact(cl.w));
  const auto modified = modified_cl_profile(cl, mu, nu).real_weights();
  double w0 = 0.0, wmu = 0.0;
  for (double x : plain)
    w0 += x;
  for (double x : modified)
    wmu += x;
  return base * wmu / w0;
}

StrategyComparison strategy_comparison(const std::vector<AnnotatedState> &states, const Energy &e_mwis,
                                       const Rational &w, const std::vector<Rational> &window_edges,
                                       const std::vector<Rational> &thresholds) {
  StrategyComparison out;
  out.thresholds = thresholds;
  std::vector<Rational> de;
  de.reserve(states.size());
  for (const auto &s : states)
    de.push_back(delta_energy_exact(s.record.energy, e_mwis).evaluate(w));
  for (const auto &edge : window_edges) {
    StrategyWindow win;
    win.delta_e = edge;
    win.prob_distance.assign(thresholds.size(), 0.0);
    win.prob_deselect.assign(thresholds.size(), 0.0);
    std::vector<std::size_t> hit_dist(thresholds.size(), 0), hit_desel(thresholds.size(), 0);
    double sum_dist = 0.0, sum_desel = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (de[i] > edge)
        continue;
      ++win.count;
      const auto &a = states[i].annotation;
      sum_dist += a.r_distance.to_double();
      sum_desel += a.r_deselect.to_double();
      for (std::size_t t = 0; t < thresholds.size(); ++t) {
        hit_dist[t] += a.r_distance >= thresholds[t] ? 1 : 0;
        hit_desel[t] += a.r_deselect >= thresholds[t] ? 1 : 0;
      }
    }
    if (win.count > 0) {
      const double n = static_cast<double>(win.count);
      win.mean_r_distance = sum_dist / n;
      win.mean_r_deselect = sum_desel / n;
      for (std::size_t t = 0; t < thresholds.size(); ++t) {
        win.prob_distance[t] = static_cast<double>(hit_dist[t]) / n;
        win.prob_deselect[t] = static_cast<double>(hit_desel[t]) / n;
      }
    }
    out.windows.push_back(std::move(win));
  }
  return out;
}

std::string graph_hash(const WeightedGraph &g) {
  nlohmann::json j = graph_to_json(g);
  j.erase("name");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

InstanceSummary summarize_instance(const InterpretationContext &ctx, std::uint64_t seed, const Rational &delta_e_max,
                                   const std::vector<AnnotatedState> &states, const Energy &e_mwis) {
  const auto &cl = ctx.lattice();
  InstanceSummary s;
  s.n = cl.n();
  s.seed = seed;
  s.graph_hash = graph_hash(cl.source);
  s.delta_e_max = delta_e_max;
  s.states = states.size();
  if (states.empty())
    return s;
  double total_l = 0.0;
  const auto mwis_weight = ctx.mwis_weight();
  for (const auto &st : states) {
    total_l += static_cast<double>(st.annotation.l);
    const auto de = delta_energy_exact(st.record.energy, e_mwis);
    if (!deselection_bound_check(cl, st.record.config, de, ctx.mis_size()).ok)
      ++s.bound_violations;
    if (compare_at(de, ExactValue(), cl.w) > 0) {
      const auto r_cl = host_ratio(de, mwis_weight, cl.w);
      const double amp = (1.0 - st.annotation.r_deselect.to_double()) / (1.0 - r_cl.to_double());
      s.max_amplification = std::max(s.max_amplification, amp);
    }
  }
  s.mean_l = total_l / static_cast<double>(states.size());
  const auto fit = fit_ec(build_tau(joint_dos(states, e_mwis, cl.w)), 0);
  if (fit.quality == FitQuality::Ok)
    s.e_c0 = fit.e_c;
  return s;
}

ScalingReport scaling_report(std::vector<InstanceSummary> instances) {
  ScalingReport rep;
  std::sort(instances.begin(), instances.end(),
            [](const auto &a, const auto &b) { return std::tie(a.n, a.seed) < std::tie(b.n, b.seed); });
  std::map<std::size_t, std::vector<double>> ec, ls;
  for (const auto &s : instances) {
    rep.bound_violations += s.bound_violations;
    if (s.e_c0)
      ec[s.n].push_back(*s.e_c0);
    ls[s.n].push_back(s.mean_l);
    auto &amp = rep.max_amplification_by_n[s.n];
    amp = std::max(amp, s.max_amplification);
  }
  for (const auto &[n, xs] : ec) {
    double mean = 0.0, var = 0.0;
    for (double x : xs)
      mean += x;
    mean /= static_cast<double>(xs.size());
    for (double x : xs)
      var += (x - mean) * (x - mean);
    rep.e_c0_by_n[n] = {mean, std::sqrt(var / static_cast<double>(xs.size()))};
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto &[n, xs] : ls) {
    double mean = 0.0;
    for (double x : xs)
      mean += x;
    mean /= static_cast<double>(xs.size());
    rep.mean_l_by_n[n] = mean;
    if (mean > 0.0 && n > 0)
      pts.emplace_back(std::log(static_cast<double>(n)), std::log(mean));
  }
  if (pts.size() >= 2)
    rep.gamma_hat = least_squares(pts).slope;
  rep.instances = std::move(instances);
  return rep;
}

void write_tau_csv(std::ostream &out, const TauCurve &curve) {
  const double w = curve.w.to_double();
  out << "E_half,E_w,E_float,d,tau_num,tau_den\n";
  for (std::size_t i = 0; i < curve.energies.size(); ++i) {
    const auto &e = curve.energies[i];
    for (std::size_t d = 0; d <= curve.d_max; ++d) {
      const auto [num, den] = curve.tau(i, d);
      out << e.half_units() << ',' << e.w_units() << ',' << format_double(e.evaluate(w)) << ',' << d << ',' << num
          << ',' << den << '\n';
    }
  }
}

void write_ecfit_csv(std::ostream &out, const std::vector<DecayFit> &fits) {
  out << "d,E_c,stderr,window_lo,window_hi,n_points,quality\n";
  for (const auto &f : fits) {
    out << f.d << ',';
    if (f.quality == FitQuality::Ok)
      out << format_double(f.e_c) << ',' << format_double(f.stderr_e_c);
    else
      out << ',';
    out << ',' << format_double(f.window_lo) << ',' << format_double(f.window_hi) << ',' << f.n_points << ','
        << to_string(f.quality) << '\n';
  }
}

void write_localization_csv(std::ostream &out, const LocalizationMap &map) {
  out << "vertex,b_e,xi_raw,xi_norm\n";
  for (std::size_t v = 0; v < map.xi_raw.size(); ++v)
    out << v << ',' << map.b_e[v] << ',' << map.xi_raw[v] << ',' << format_double(map.xi_norm[v]) << '\n';
}

void write_compare_csv(std::ostream &out, const StrategyComparison &cmp) {
  out << "dE,r0,strategy,prob\n";
  for (const auto &win : cmp.windows)
    for (std::size_t t = 0; t < cmp.thresholds.size(); ++t) {
      out << win.delta_e.str() << ',' << cmp.thresholds[t].str() << ",distance," << format_double(win.prob_distance[t])
          << '\n';
      out << win.delta_e.str() << ',' << cmp.thresholds[t].str() << ",deselect," << format_double(win.prob_deselect[t])
          << '\n';
    }
}

void write_scaling_csv(std::ostream &out, const ScalingReport &report) {
  out << "N,seed,graph_hash,delta_e_max,states,mean_l,E_c0,max_amplification,bound_violations,gamma_hat\n";
  const std::string gamma = report.gamma_hat ? format_double(*report.gamma_hat) : "";
  for (const auto &s : report.instances)
    out << s.n << ',' << s.seed << ',' << s.graph_hash << ',' << s.delta_e_max.str() << ',' << s.states << ','
        << format_double(s.mean_l) << ',' << (s.e_c0 ? format_double(*s.e_c0) : "") << ','
        << format_double(s.max_amplification) << ',' << s.bound_violations << ',' << gamma << '\n';
}

} // namespace misembed
