#include "misembed/interpretation.hpp"

#include "misembed/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace misembed {

std::string to_string(TiePolicy p) {
  switch (p) {
  case TiePolicy::Pessimistic:
    return "pessimistic";
  case TiePolicy::Optimistic:
    return "optimistic";
  case TiePolicy::First:
    return "first";
  case TiePolicy::Last:
    return "last";
  }
  return "pessimistic";
}

TiePolicy parse_tie_policy(const std::string &s) {
  if (s == "pessimistic")
    return TiePolicy::Pessimistic;
  if (s == "optimistic")
    return TiePolicy::Optimistic;
  if (s == "first")
    return TiePolicy::First;
  if (s == "last")
    return TiePolicy::Last;
  throw ParseError("tie", "expected pessimistic, optimistic, first or last, got '" + s + "'");
}

Rational approx_ratio(std::size_t selected, std::size_t mis_size) {
  if (mis_size == 0)
    return Rational(selected == 0 ? 1 : 0);
  return {static_cast<std::int64_t>(selected), static_cast<std::int64_t>(mis_size)};
}

Rational approx_ratio(const WeightedGraph &g, const Configuration &s) {
  if (!is_independent(g, s))
    throw StructuralError("approximation ratio of a dependent set");
  const auto best = solve_mwis(g, WeightMode::exact(Rational(1, 8)));
  const auto best_w = best.weight.exact->evaluate(Rational(1, 8));
  if (best_w == Rational(0))
    return Rational(1);
  return total_weight(g, s).evaluate(Rational(1, 8)) / best_w;
}

Rational host_ratio(const ExactValue &delta_e, const ExactValue &mwis_weight, const Rational &w) {
  return Rational(1) - delta_e.evaluate(w) / mwis_weight.evaluate(w);
}

InterpretationContext::InterpretationContext(const CrossingLattice &cl) : cl_(&cl) {
  sources_ = all_independent_sets(cl.source);
  images_.reserve(sources_.size());
  for (const auto &s : sources_) {
    images_.push_back(embed(cl, s));
    mis_size_ = std::max(mis_size_, s.count());
  }
}

ExactValue InterpretationContext::mwis_weight() const {
  return cl_->base_weight + static_cast<std::int64_t>(mis_size_) * ExactValue(0, 2);
}

DistanceResult distance_bruteforce(const InterpretationContext &ctx, const Configuration &s_host, TiePolicy policy) {
  if (s_host.size() != ctx.lattice().host.vertex_count())
    throw StructuralError("configuration does not index the host graph");
  DistanceResult out;
  out.d = std::numeric_limits<std::size_t>::max();
  const auto &images = ctx.images();
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto d = s_host.hamming(images[i]);
    if (d < out.d) {
      out.d = d;
      out.nearest_set.clear();
    }
    if (d == out.d)
      out.nearest_set.push_back(ctx.sources()[i]);
  }
  out.tie = out.nearest_set.size() > 1;
  const auto m = ctx.mis_size();
  std::size_t pick = out.nearest_set.front().count();
  switch (policy) {
  case TiePolicy::Pessimistic:
    for (const auto &s : out.nearest_set)
      pick = std::min(pick, s.count());
    break;
  case TiePolicy::Optimistic:
    for (const auto &s : out.nearest_set)
      pick = std::max(pick, s.count());
    break;
  case TiePolicy::First:
    break;
  case TiePolicy::Last:
    pick = out.nearest_set.back().count();
    break;
  }
  out.r = approx_ratio(pick, m);
  return out;
}

std::int64_t QuboInstance::evaluate(const Configuration &x) const {
  if (x.size() != n())
    throw StructuralError("assignment length does not match the QUBO");
  std::int64_t v = c;
  for (std::size_t p = 0; p < n(); ++p)
    if (x.test(p))
      v += d_lin[p];
  for (const auto &t : quad)
    if (x.test(t.p) && x.test(t.q))
      v += t.value;
  for (const auto &t : penalty)
    if (x.test(t.p) && x.test(t.q))
      v += t.value;
  return v;
}

QuboInstance build_qubo(const CrossingLattice &cl, const Configuration &s_host) {
  if (s_host.size() != cl.host.vertex_count())
    throw StructuralError("configuration does not index the host graph");
  const auto n = cl.n();
  QuboInstance q;
  q.d0.assign(n, 0);
  q.d1.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    const auto pd = path_distance(cl.chains[p], s_host);
    q.d0[p] = static_cast<std::int64_t>(pd.to_unselected);
    q.d1[p] = static_cast<std::int64_t>(pd.to_selected);
  }
  q.d_lin.assign(n, 0);
  std::int64_t dominate = 1;
  for (std::size_t p = 0; p < n; ++p) {
    q.c += q.d0[p];
    q.d_lin[p] += q.d1[p] - q.d0[p];
    dominate += std::max(q.d0[p], q.d1[p]);
  }
  for (const auto &site : cl.crossings) {
    std::array<std::int64_t, 4> d{0, 0, 0, 0};
    if (!site.gadgets.empty()) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const auto target = site.canonical(a, b);
          if (!target)
            continue;
          std::int64_t h = 0;
          for (const auto &gv : site.gadgets)
            h += s_host.test(gv.id) != (gv.id == *target) ? 1 : 0;
          d[2 * a + b] = h;
        }
    }
    q.dpq.push_back(d);
    // d00 (1-np)(1-nq) + d01 (1-np) nq + d10 np (1-nq) + d11 np nq
    q.c += d[0];
    q.d_lin[site.p] += d[2] - d[0];
    q.d_lin[site.q] += d[1] - d[0];
    const auto quad = d[0] - d[1] - d[2] + d[3];
    if (quad != 0)
      q.quad.push_back({site.p, site.q, quad});
    dominate += *std::max_element(d.begin(), d.end());
  }
  for (const auto &[u, v] : cl.source.edges())
    q.penalty.push_back({u, v, dominate});
  return q;
}

namespace {

/// Dense symmetric coupling matrix (quadratic terms and penalties).
std::vector<std::vector<std::int64_t>> couplings(const QuboInstance &q) {
  std::vector<std::vector<std::int64_t>> m(q.n(), std::vector<std::int64_t>(q.n(), 0));
  for (const auto *terms : {&q.quad, &q.penalty})
    for (const auto &t : *terms) {
      m[t.p][t.q] += t.value;
      m[t.q][t.p] += t.value;
    }
  return m;
}

/// Variables are fixed from the highest index down, 0 before 1, so the first
/// optimum reached is the smallest assignment.
struct QuboSearch {
  const QuboInstance &q;
  std::vector<std::vector<std::int64_t>> m;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<int> x;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<int> best_x;

  std::size_t var(std::size_t depth) const { return q.n() - 1 - depth; }

  void run(std::size_t depth, std::int64_t value) {
    if (++nodes > budget)
      throw BudgetExceeded("QUBO search node budget exceeded");
    const auto n = q.n();
    std::int64_t lb = value;
    for (std::size_t i = depth; i < n; ++i) {
      const auto p = var(i);
      std::int64_t lin = q.d_lin[p];
      for (std::size_t j = 0; j < depth; ++j)
        if (x[var(j)])
          lin += m[p][var(j)];
      for (std::size_t j = i + 1; j < n; ++j)
        lin += std::min<std::int64_t>(0, m[p][var(j)]);
      lb += std::min<std::int64_t>(0, lin);
    }
    if (lb >= best)
      return;
    if (depth == n) {
      best = value;
      best_x = x;
      return;
    }
    const auto p = var(depth);
    run(depth + 1, value);
    std::int64_t delta = q.d_lin[p];
    for (std::size_t j = 0; j < depth; ++j)
      if (x[var(j)])
        delta += m[p][var(j)];
    x[p] = 1;
    run(depth + 1, value + delta);
    x[p] = 0;
  }
};

} // namespace

QuboSolution solve_qubo(const QuboInstance &q, std::size_t exhaustive_limit, std::uint64_t node_budget) {
  const auto n = q.n();
  QuboSolution sol;
  sol.assignment = Configuration(n);
  const auto m = couplings(q);
  if (n <= exhaustive_limit && n < 63) {
    // Gray-code walk; ties keep the smallest assignment.
    std::vector<int> x(n, 0);
    std::int64_t value = q.c;
    std::int64_t best = value;
    std::uint64_t best_mask = 0, mask = 0;
    for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); ++step) {
      const auto p = static_cast<std::size_t>(std::countr_zero(step));
      std::int64_t delta = q.d_lin[p];
      for (std::size_t r = 0; r < n; ++r)
        if (x[r] && r != p)
          delta += m[p][r];
      if (x[p]) {
        value -= delta;
        x[p] = 0;
      } else {
        value += delta;
        x[p] = 1;
      }
      mask ^= std::uint64_t{1} << p;
      if (value < best || (value == best && mask < best_mask)) {
        best = value;
        best_mask = mask;
      }
    }
    for (std::size_t p = 0; p < n; ++p)
      sol.assignment.set(p, (best_mask >> p) & 1U);
    sol.value = best;
    return sol;
  }
  QuboSearch search{q, m, node_budget, 0, std::vector<int>(n, 0), std::numeric_limits<std::int64_t>::max(), {}};
  search.run(0, q.c);
  for (std::size_t p = 0; p < n; ++p)
    sol.assignment.set(p, search.best_x[p] != 0);
  sol.value = search.best;
  return sol;
}

std::int64_t qubo_mwis_shortcut(const CrossingLattice &cl, const QuboInstance &q) {
  std::vector<Vertex> keep;
  std::vector<ExactValue> ws;
  std::int64_t total = 0;
  for (std::size_t p = 0; p < q.n(); ++p) {
    total += q.d0[p];
    if (q.d0[p] > q.d1[p])
      keep.push_back(p);
  }
  const auto sub = cl.source.induced(keep);
  for (auto p : keep)
    ws.push_back(ExactValue::integer(q.d0[p] - q.d1[p]));
  const auto weighted = sub.reweighted(std::move(ws));
  const auto best = solve_mwis(weighted, WeightMode::exact(Rational(1, 8)));
  return total - best.weight.exact->half_units() / 2;
}

nlohmann::json qubo_to_json(const QuboInstance &q) {
  nlohmann::json j;
  j["C"] = q.c;
  j["D"] = q.d_lin;
  j["Q"] = nlohmann::json::array();
  for (const auto &t : q.quad)
    j["Q"].push_back({t.p, t.q, t.value});
  j["Qbar"] = nlohmann::json::array();
  for (const auto &t : q.penalty)
    j["Qbar"].push_back({t.p, t.q, t.value});
  return j;
}

DeselectResult deselect(const CrossingLattice &cl, const Configuration &s_host, std::size_t mis_size) {
  if (s_host.size() != cl.host.vertex_count())
    throw StructuralError("configuration does not index the host graph");
  DeselectResult out;
  out.s = Configuration(cl.n());
  for (std::size_t p = 0; p < cl.n(); ++p) {
    const auto state = chain_state(cl, p, s_host);
    if (!state)
      out.defective_chains.push_back(p);
    else if (*state == 1)
      out.s.set(p);
  }
  for (const auto &[u, v] : cl.source.edges())
    if (out.s.test(u) && out.s.test(v)) {
      out.conflicts.emplace_back(u, v);
      out.s.set(v, false);
    }
  out.r = approx_ratio(out.s.count(), mis_size);
  return out;
}

BoundCheck deselection_bound_check(const CrossingLattice &cl, const Configuration &s_host, const ExactValue &delta_e,
                                   std::size_t mis_size) {
  BoundCheck out;
  const auto result = deselect(cl, s_host, mis_size);
  out.r_actual = result.r;
  const auto m = static_cast<std::int64_t>(mis_size);
  if (m == 0) {
    out.r_bound = Rational(1);
    out.ok = out.saturated = true;
    return out;
  }
  out.r_bound = Rational(1) - delta_e.evaluate(cl.w) / (Rational(2 * m) * cl.w);
  // r >= bound  <=>  dE >= 2w (M - |S|); scaled by 2 den on both sides.
  const auto lhs = delta_e.scaled(cl.w);
  const auto rhs = 4 * cl.w.num * (m - static_cast<std::int64_t>(result.s.count()));
  out.ok = lhs >= rhs;
  out.saturated = lhs == rhs;
  return out;
}

Annotation annotate(const InterpretationContext &ctx, const StateRecord &record, const Energy &e_mwis,
                    TiePolicy policy) {
  const auto &cl = ctx.lattice();
  Annotation a;
  const auto dist = distance_bruteforce(ctx, record.config, policy);
  a.d = dist.d;
  a.tie = dist.tie;
  a.r_distance = dist.r;
  a.l = interpret(cl, record.config).wall_count();
  if (!record.energy.exact || !e_mwis.exact) {
    // Modulated profiles leave the w lattice; the bound is not defined there.
    a.r_deselect = deselect(cl, record.config, ctx.mis_size()).r;
    return a;
  }
  const auto gap = delta_energy_exact(record.energy, e_mwis);
  const auto check = deselection_bound_check(cl, record.config, gap, ctx.mis_size());
  a.r_deselect = check.r_actual;
  a.bound_ok = check.ok;
  return a;
}

} // namespace misembed
