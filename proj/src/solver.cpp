#include "misembed/solver.hpp"

#include "misembed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace misembed {

namespace {

std::vector<Vertex> search_order(const WeightedGraph &g, VertexOrder order) {
  std::vector<Vertex> out(g.vertex_count());
  std::iota(out.begin(), out.end(), Vertex{0});
  if (order == VertexOrder::DegreeDescending)
    std::stable_sort(out.begin(), out.end(), [&g](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  return out;
}

/// Greedy clique partition following `order`: each unassigned vertex opens a
/// clique and absorbs later unassigned neighbours adjacent to every member.
std::vector<std::vector<Vertex>> greedy_cliques(const WeightedGraph &g, const std::vector<Vertex> &order) {
  std::vector<std::size_t> pos(g.vertex_count(), 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    pos[order[i]] = i;
  std::vector<bool> assigned(g.vertex_count(), true);
  for (auto v : order)
    assigned[v] = false;
  std::vector<std::vector<Vertex>> cliques;
  for (auto v : order) {
    if (assigned[v])
      continue;
    std::vector<Vertex> clique{v};
    assigned[v] = true;
    auto candidates = g.neighbors(v);
    std::sort(candidates.begin(), candidates.end(), [&pos](Vertex a, Vertex b) { return pos[a] < pos[b]; });
    for (auto u : candidates) {
      if (assigned[u] || clique.size() >= 64)
        continue;
      if (std::all_of(clique.begin(), clique.end(), [&](Vertex m) { return g.adjacent(u, m); })) {
        clique.push_back(u);
        assigned[u] = true;
      }
    }
    cliques.push_back(std::move(clique));
  }
  return cliques;
}

/// Vertex partition used by the bound: hinted induced paths (split into
/// chunks of at most 64 vertices) and greedy cliques over the rest.
struct Partition {
  std::vector<std::vector<Vertex>> parts;
  std::vector<bool> is_path;
};

Partition make_partition(const WeightedGraph &g, const std::vector<Vertex> &order,
                         const std::vector<std::vector<Vertex>> &path_hint) {
  Partition out;
  std::vector<bool> used(g.vertex_count(), false);
  for (const auto &path : path_hint)
    for (std::size_t start = 0; start < path.size(); start += 64) {
      std::vector<Vertex> chunk;
      for (std::size_t k = start; k < std::min(path.size(), start + 64); ++k) {
        if (path[k] >= g.vertex_count() || used[path[k]])
          throw StructuralError("solver path hint must list distinct vertices");
        used[path[k]] = true;
        chunk.push_back(path[k]);
      }
      out.parts.push_back(std::move(chunk));
      out.is_path.push_back(true);
    }
  std::vector<Vertex> rest;
  for (auto v : order)
    if (!used[v])
      rest.push_back(v);
  for (auto &c : greedy_cliques(g, rest)) {
    out.parts.push_back(std::move(c));
    out.is_path.push_back(false);
  }
  return out;
}

/// Depth-first inclusion/exclusion over a fixed vertex order. The bound on
/// the undecided part sums, over the partition, the best weight each part
/// can still contribute from its available vertices (undecided and not
/// blocked by a selected neighbour): the largest weight for a clique, an
/// exact path DP for a path. Maintained incrementally.
template <typename Num> class SearchCore {
public:
  SearchCore(const WeightedGraph &g, std::vector<Num> weights, const SolverOptions &options)
      : g_(g), weights_(std::move(weights)), options_(options), n_(g.vertex_count()), bits_(n_) {
    order_ = search_order(g, options.order);
    pos_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      pos_[order_[i]] = i;
    auto partition = make_partition(g, order_, options.path_hint);
    members_ = std::move(partition.parts);
    is_path_ = std::move(partition.is_path);
    part_of_.assign(n_, 0);
    bit_of_.assign(n_, 0);
    linked_.assign(members_.size(), 0);
    avail_.assign(members_.size(), 0);
    contrib_.assign(members_.size(), Num{0});
    for (std::size_t c = 0; c < members_.size(); ++c) {
      for (std::size_t k = 0; k < members_[c].size(); ++k) {
        const auto v = members_[c][k];
        part_of_[v] = c;
        bit_of_[v] = std::uint64_t{1} << k;
        avail_[c] |= bit_of_[v];
        if (k > 0 && g.adjacent(members_[c][k - 1], v))
          linked_[c] |= bit_of_[v];
      }
      contrib_[c] = recompute(c);
      bound_ += contrib_[c];
    }
    blocked_.assign(n_, 0);
  }

  std::uint64_t nodes() const { return nodes_; }

  /// Calls visit(bits, weight) for every independent set with weight >= threshold.
  template <class Visit> void enumerate(Num threshold, Visit &&visit) {
    threshold_ = threshold;
    dfs(0, Num{0}, visit);
  }

  /// Branch and bound for the optimum; returns the best weight found.
  Num maximize() {
    best_ = Num{0};
    best_bits_ = Configuration(n_);
    threshold_ = improvement_threshold(best_);
    auto keep = [this](const Configuration &bits, Num weight) {
      if (weight >= threshold_) {
        best_ = weight;
        best_bits_ = bits;
        threshold_ = improvement_threshold(best_);
      }
    };
    dfs(0, Num{0}, keep);
    return best_;
  }

  const Configuration &best_bits() const { return best_bits_; }

private:
  Num improvement_threshold(Num best) const {
    if constexpr (std::is_integral_v<Num>)
      return best + 1;
    else
      return best + options_.float_tolerance;
  }

  Num recompute(std::size_t c) const {
    const auto mask = avail_[c];
    const auto &members = members_[c];
    if (!is_path_[c]) {
      Num best{0};
      for (std::size_t k = 0; k < members.size(); ++k)
        if ((mask >> k) & 1U)
          best = std::max(best, weights_[members[k]]);
      return best;
    }
    // Path DP: excl/incl = best with the current vertex out/in.
    Num excl{0}, incl{0};
    bool incl_valid = false;
    for (std::size_t k = 0; k < members.size(); ++k) {
      const Num before = incl_valid ? std::max(excl, incl) : excl;
      if ((mask >> k) & 1U) {
        const bool linked = (linked_[c] >> k) & 1U;
        incl = weights_[members[k]] + (linked ? excl : before);
        incl_valid = true;
      } else {
        incl_valid = false;
      }
      excl = before;
    }
    return incl_valid ? std::max(excl, incl) : excl;
  }

  void remove_avail(Vertex v) {
    const auto c = part_of_[v];
    avail_[c] &= ~bit_of_[v];
    if (is_path_[c] || weights_[v] >= contrib_[c]) {
      const Num updated = recompute(c);
      bound_ += updated - contrib_[c];
      contrib_[c] = updated;
    }
  }

  void add_avail(Vertex v) {
    const auto c = part_of_[v];
    avail_[c] |= bit_of_[v];
    if (is_path_[c]) {
      const Num updated = recompute(c);
      bound_ += updated - contrib_[c];
      contrib_[c] = updated;
    } else if (weights_[v] > contrib_[c]) {
      bound_ += weights_[v] - contrib_[c];
      contrib_[c] = weights_[v];
    }
  }

  template <class Visit> void dfs(std::size_t i, Num current, Visit &visit) {
    if (++nodes_ > options_.node_budget)
      throw BudgetExceeded("search node budget of " + std::to_string(options_.node_budget) + " exceeded");
    if (current + bound_ < threshold_)
      return;
    while (i < n_ && blocked_[order_[i]] > 0)
      ++i;
    if (i == n_) {
      visit(bits_, current);
      return;
    }
    const auto v = order_[i];
    remove_avail(v);

    bits_.set(v);
    for (auto u : g_.neighbors(v))
      if (blocked_[u]++ == 0 && pos_[u] > i)
        remove_avail(u);
    dfs(i + 1, current + weights_[v], visit);
    for (auto u : g_.neighbors(v))
      if (--blocked_[u] == 0 && pos_[u] > i)
        add_avail(u);
    bits_.set(v, false);

    dfs(i + 1, current, visit);
    add_avail(v);
  }

private:
  const WeightedGraph &g_;
  std::vector<Num> weights_;
  SolverOptions options_;
  std::size_t n_;
  std::vector<Vertex> order_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> part_of_;
  std::vector<std::uint64_t> bit_of_;
  std::vector<std::vector<Vertex>> members_;
  std::vector<bool> is_path_;
  std::vector<std::uint64_t> linked_;
  std::vector<std::uint64_t> avail_;
  std::vector<Num> contrib_;
  std::vector<int> blocked_;
  Num bound_{0};
  Num threshold_{0};
  Configuration bits_;
  std::uint64_t nodes_ = 0;
  Num best_{0};
  Configuration best_bits_;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

template <typename Num>
MwisResult run_mwis(const WeightedGraph &g, std::vector<Num> weights, const SolverOptions &options) {
  SearchCore<Num> optimizer(g, weights, options);
  const Num best = optimizer.maximize();
  // Second pass over the optimal level to pick the canonical representative.
  SearchCore<Num> ties(g, std::move(weights), options);
  std::optional<Configuration> smallest;
  Num level = best;
  if constexpr (!std::is_integral_v<Num>)
    level = best - options.float_tolerance;
  ties.enumerate(level, [&smallest](const Configuration &bits, Num) {
    if (!smallest || bits < *smallest)
      smallest = bits;
  });
  MwisResult out;
  out.config = smallest ? *smallest : optimizer.best_bits();
  out.nodes = optimizer.nodes() + ties.nodes();
  return out;
}

template <typename Num>
std::vector<Configuration> run_window(const WeightedGraph &g, std::vector<Num> weights, Num threshold,
                                      const SolverOptions &options, std::uint64_t &nodes) {
  SearchCore<Num> core(g, std::move(weights), options);
  std::vector<Configuration> out;
  core.enumerate(threshold, [&](const Configuration &bits, Num) {
    if (out.size() >= options.state_budget)
      throw BudgetExceeded("state budget of " + std::to_string(options.state_budget) + " exceeded");
    out.push_back(bits);
  });
  nodes = core.nodes();
  return out;
}

} // namespace

Energy energy_of(const WeightedGraph &g, const Configuration &s, const WeightMode &mode) {
  Energy e;
  if (mode.is_exact()) {
    const auto exact = -total_weight(g, s);
    e.exact = exact;
    e.value = exact.evaluate(mode.w_value());
  } else {
    e.value = -total_weight(g, s, mode);
  }
  return e;
}

double delta_energy(const Energy &e, const Energy &e_mwis) { return e.value - e_mwis.value; }

ExactValue delta_energy_exact(const Energy &e, const Energy &e_mwis) {
  if (!e.exact || !e_mwis.exact)
    throw StructuralError("exact energy requested from a float-mode record");
  return *e.exact - *e_mwis.exact;
}

bool canonical_less(const StateRecord &a, const StateRecord &b, const WeightMode &mode) {
  if (mode.is_exact() && a.energy.exact && b.energy.exact) {
    if (auto c = compare_at(*a.energy.exact, *b.energy.exact, mode.w); c != 0)
      return c < 0;
  } else if (a.energy.value != b.energy.value) {
    return a.energy.value < b.energy.value;
  }
  return a.config < b.config;
}

MwisResult solve_mwis(const WeightedGraph &g, const WeightMode &mode, const SolverOptions &options) {
  MwisResult out = mode.is_exact() ? run_mwis<std::int64_t>(g, g.scaled_weights(mode.w), options)
                                   : run_mwis<double>(g, g.numeric_weights(mode), options);
  const auto e = energy_of(g, out.config, mode);
  out.weight.value = -e.value;
  if (e.exact)
    out.weight.exact = -*e.exact;
  return out;
}

LowEnergySpectrum enumerate_low_energy(const WeightedGraph &g, const WeightMode &mode, const Rational &delta_e_max,
                                       const SolverOptions &options) {
  const auto ground = solve_mwis(g, mode, options);
  EnergyWindow window;
  window.delta_e_max = delta_e_max;
  window.e_mwis.value = -ground.weight.value;
  if (ground.weight.exact)
    window.e_mwis.exact = -*ground.weight.exact;
  auto spectrum = enumerate_low_energy(g, mode, window, options);
  spectrum.ground = ground;
  spectrum.nodes += ground.nodes;
  return spectrum;
}

LowEnergySpectrum enumerate_low_energy(const WeightedGraph &g, const WeightMode &mode, const EnergyWindow &window,
                                       const SolverOptions &options) {
  if (window.delta_e_max < Rational(0))
    throw StructuralError("energy window must be non-negative");
  LowEnergySpectrum spectrum;
  spectrum.window = window;
  spectrum.ground.weight.value = -window.e_mwis.value;
  if (window.e_mwis.exact)
    spectrum.ground.weight.exact = -*window.e_mwis.exact;

  std::vector<Configuration> configs;
  if (mode.is_exact()) {
    if (!window.e_mwis.exact)
      throw StructuralError("exact-mode window needs an exact ground energy");
    const std::int64_t top = (-*window.e_mwis.exact).scaled(mode.w);
    const auto &d = window.delta_e_max;
    const std::int64_t slack = floor_div(d.num * 2 * mode.w.den, d.den);
    configs = run_window<std::int64_t>(g, g.scaled_weights(mode.w), top - slack, options, spectrum.nodes);
  } else {
    const double top = -window.e_mwis.value;
    const double threshold = top - window.delta_e_max.to_double() - options.float_tolerance;
    configs = run_window<double>(g, g.numeric_weights(mode), threshold, options, spectrum.nodes);
  }

  spectrum.states.reserve(configs.size());
  for (auto &c : configs) {
    auto e = energy_of(g, c, mode);
    spectrum.states.push_back({std::move(c), e});
  }
  std::sort(spectrum.states.begin(), spectrum.states.end(),
            [&mode](const StateRecord &a, const StateRecord &b) { return canonical_less(a, b, mode); });
  if (!spectrum.states.empty()) {
    spectrum.ground.config = spectrum.states.front().config;
  }
  return spectrum;
}

double clique_partition_bound(const WeightedGraph &g, const std::vector<double> &weights,
                              const std::vector<Vertex> &vertices) {
  double total = 0.0;
  for (const auto &clique : greedy_cliques(g, vertices)) {
    double best = 0.0;
    for (auto v : clique)
      best = std::max(best, weights[v]);
    total += best;
  }
  return total;
}

namespace {

struct MaskHash {
  std::size_t operator()(const Configuration &c) const noexcept {
    std::size_t h = c.size();
    for (auto w : c.words())
      h = h * 0x9E3779B97F4A7C15ULL ^ (w + 0x7F4A7C15ULL + (h << 6) + (h >> 2));
    return h;
  }
};

class IsCounter {
public:
  explicit IsCounter(const WeightedGraph &g) : g_(g) {}

  BigInt count(const Configuration &alive) {
    if (alive.none())
      return 1;
    if (auto it = memo_.find(alive); it != memo_.end())
      return it->second;
    BigInt result = 1;
    const auto components = split(alive);
    if (components.size() > 1) {
      for (const auto &comp : components)
        result *= count(comp);
    } else {
      result = count_connected(alive);
    }
    if (memo_.size() < 2'000'000)
      memo_.emplace(alive, result);
    return result;
  }

private:
  std::size_t live_degree(Vertex v, const Configuration &alive) const {
    std::size_t d = 0;
    for (auto u : g_.neighbors(v))
      d += alive.test(u) ? 1 : 0;
    return d;
  }

  BigInt count_connected(const Configuration &alive) {
    Vertex pick = 0;
    std::size_t best = 0;
    std::size_t size = 0;
    for (auto v : alive.selected()) {
      ++size;
      const auto d = live_degree(v, alive);
      if (d > best || size == 1) {
        best = d;
        pick = v;
      }
    }
    if (best <= 2) {
      // Connected with max degree <= 2: a path or a cycle.
      std::size_t edges = 0;
      for (auto v : alive.selected())
        edges += live_degree(v, alive);
      edges /= 2;
      return edges == size ? lucas(size) : fibonacci(size + 2);
    }
    Configuration without = alive;
    without.set(pick, false);
    Configuration closed = without;
    for (auto u : g_.neighbors(pick))
      closed.set(u, false);
    return count(without) + count(closed);
  }

  std::vector<Configuration> split(const Configuration &alive) const {
    std::vector<Configuration> out;
    Configuration seen(alive.size());
    for (auto start : alive.selected()) {
      if (seen.test(start))
        continue;
      Configuration comp(alive.size());
      std::vector<Vertex> stack{start};
      seen.set(start);
      while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        comp.set(v);
        for (auto u : g_.neighbors(v))
          if (alive.test(u) && !seen.test(u)) {
            seen.set(u);
            stack.push_back(u);
          }
      }
      out.push_back(std::move(comp));
    }
    return out;
  }

  static BigInt fibonacci(std::size_t k) {
    BigInt a = 0, b = 1;
    for (std::size_t i = 0; i < k; ++i) {
      BigInt next = a + b;
      a = b;
      b = next;
    }
    return a;
  }

  static BigInt lucas(std::size_t k) {
    BigInt a = 2, b = 1;
    for (std::size_t i = 0; i < k; ++i) {
      BigInt next = a + b;
      a = b;
      b = next;
    }
    return a;
  }

  const WeightedGraph &g_;
  std::unordered_map<Configuration, BigInt, MaskHash> memo_;
};

} // namespace

BigInt count_all_is(const WeightedGraph &g) {
  Configuration alive(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    alive.set(v);
  return IsCounter(g).count(alive);
}

} // namespace misembed
