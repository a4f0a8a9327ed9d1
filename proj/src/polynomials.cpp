#include "misembed/polynomials.hpp"

#include "misembed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace misembed {

using nlohmann::json;

GeneralizedPolynomial GeneralizedPolynomial::monomial(const ExactValue &exponent, const BigInt &coefficient) {
  GeneralizedPolynomial p;
  p.add_term(exponent, coefficient);
  return p;
}

GeneralizedPolynomial GeneralizedPolynomial::binomial(const ExactValue &exponent) {
  auto p = one();
  p.add_term(exponent, 1);
  return p;
}

BigInt GeneralizedPolynomial::coefficient(const ExactValue &exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt GeneralizedPolynomial::coefficient_sum() const {
  BigInt total = 0;
  for (const auto &[e, c] : terms_)
    total += c;
  return total;
}

void GeneralizedPolynomial::add_term(const ExactValue &exponent, const BigInt &coefficient) {
  if (coefficient < 0)
    throw InvariantViolation("GeneralizedPolynomial: negative coefficient");
  if (coefficient == 0)
    return;
  terms_[exponent] += coefficient;
}

GeneralizedPolynomial GeneralizedPolynomial::shifted(const ExactValue &exponent) const {
  GeneralizedPolynomial out;
  for (const auto &[e, c] : terms_)
    out.terms_.emplace_hint(out.terms_.end(), e + exponent, c);
  return out;
}

GeneralizedPolynomial GeneralizedPolynomial::pow(std::size_t k) const {
  auto result = one();
  auto base = *this;
  while (k > 0) {
    if (k & 1U)
      result *= base;
    k >>= 1U;
    if (k > 0)
      base *= base;
  }
  return result;
}

std::vector<std::pair<Rational, BigInt>> GeneralizedPolynomial::collapsed(const Rational &w) const {
  std::map<Rational, BigInt> merged;
  for (const auto &[e, c] : terms_)
    merged[e.evaluate(w)] += c;
  return {merged.begin(), merged.end()};
}

Rational GeneralizedPolynomial::degree(const Rational &w) const {
  if (terms_.empty())
    throw StructuralError("GeneralizedPolynomial::degree: zero polynomial");
  Rational best = terms_.begin()->first.evaluate(w);
  for (const auto &[e, c] : terms_)
    best = std::max(best, e.evaluate(w));
  return best;
}

GeneralizedPolynomial &GeneralizedPolynomial::operator+=(const GeneralizedPolynomial &o) {
  for (const auto &[e, c] : o.terms_)
    terms_[e] += c;
  return *this;
}

GeneralizedPolynomial &GeneralizedPolynomial::operator-=(const GeneralizedPolynomial &o) {
  for (const auto &[e, c] : o.terms_) {
    const auto it = terms_.find(e);
    if (it == terms_.end() || it->second < c)
      throw InvariantViolation("GeneralizedPolynomial: subtraction leaves a negative coefficient at " + e.str());
    it->second -= c;
    if (it->second == 0)
      terms_.erase(it);
  }
  return *this;
}

GeneralizedPolynomial operator*(const GeneralizedPolynomial &a, const GeneralizedPolynomial &b) {
  GeneralizedPolynomial out;
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_)
      out.terms_[ea + eb] += ca * cb;
  return out;
}

GeneralizedPolynomial &GeneralizedPolynomial::operator*=(const GeneralizedPolynomial &o) {
  *this = *this * o;
  return *this;
}

std::string GeneralizedPolynomial::str() const {
  if (terms_.empty())
    return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    if (!first)
      out << " + ";
    first = false;
    if (e == ExactValue()) {
      out << c;
      continue;
    }
    if (c != 1)
      out << c;
    out << "x";
    if (e != ExactValue::integer(1))
      out << "^(" << e.str() << ")";
  }
  return out.str();
}

bool coefficientwise_leq(const GeneralizedPolynomial &a, const GeneralizedPolynomial &b) {
  for (const auto &[e, c] : a.terms())
    if (c > b.coefficient(e))
      return false;
  return true;
}

namespace {

const std::vector<ExactValue> &lattice_weights(const WeightedGraph &g) {
  if (g.has_real_weights())
    throw StructuralError("independence polynomial: graph carries real weights");
  return g.exact_weights();
}

class Lister {
public:
  Lister(const WeightedGraph &g, std::uint64_t budget)
      : g_(g), weights_(lattice_weights(g)), blocked_(g.vertex_count(), 0), budget_(budget) {}

  GeneralizedPolynomial run() {
    visit(0, ExactValue());
    return std::move(result_);
  }

private:
  void visit(Vertex v, const ExactValue &weight) {
    if (v == g_.vertex_count()) {
      if (++states_ > budget_)
        throw BudgetExceeded("ip_bruteforce: state budget exhausted");
      result_.add_term(weight, 1);
      return;
    }
    visit(v + 1, weight);
    if (blocked_[v] == 0) {
      for (auto u : g_.neighbors(v))
        ++blocked_[u];
      visit(v + 1, weight + weights_[v]);
      for (auto u : g_.neighbors(v))
        --blocked_[u];
    }
  }

  const WeightedGraph &g_;
  const std::vector<ExactValue> &weights_;
  std::vector<std::uint32_t> blocked_;
  std::uint64_t budget_;
  std::uint64_t states_ = 0;
  GeneralizedPolynomial result_;
};

struct MaskHash {
  std::size_t operator()(const Configuration &c) const noexcept {
    std::size_t h = c.size();
    for (auto w : c.words())
      h = h * 0x9E3779B97F4A7C15ULL ^ (w + 0x7F4A7C15ULL + (h << 6) + (h >> 2));
    return h;
  }
};

class Branching {
public:
  explicit Branching(const WeightedGraph &g) : g_(g), weights_(lattice_weights(g)) {}

  GeneralizedPolynomial poly(const Configuration &alive) {
    if (alive.none())
      return GeneralizedPolynomial::one();
    if (auto it = memo_.find(alive); it != memo_.end())
      return it->second;
    const auto components = split(alive);
    GeneralizedPolynomial result;
    if (components.size() > 1) {
      result = GeneralizedPolynomial::one();
      for (const auto &comp : components)
        result *= poly(comp);
    } else {
      result = connected(alive);
    }
    if (memo_.size() < 500'000)
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

  GeneralizedPolynomial connected(const Configuration &alive) {
    Vertex pick = 0, end = 0;
    std::size_t best = 0;
    bool first = true, has_end = false;
    for (auto v : alive.selected()) {
      const auto d = live_degree(v, alive);
      if (first || d > best) {
        best = d;
        pick = v;
        first = false;
      }
      if (d <= 1 && !has_end) {
        end = v;
        has_end = true;
      }
    }
    if (best <= 2 && has_end)
      return path_from(end, alive);
    Configuration without = alive;
    without.set(pick, false);
    Configuration closed = without;
    for (auto u : g_.neighbors(pick))
      closed.set(u, false);
    return poly(without) + poly(closed).shifted(weights_[pick]);
  }

  /// Weighted path walked from one endpoint: track the polynomials of
  /// prefixes ending unselected (a) and selected (b).
  GeneralizedPolynomial path_from(Vertex start, const Configuration &alive) const {
    auto a = GeneralizedPolynomial::one();
    GeneralizedPolynomial b;
    Vertex prev = start, cur = start;
    bool has_prev = false;
    while (true) {
      auto next_b = a.shifted(weights_[cur]);
      a += b;
      b = std::move(next_b);
      std::optional<Vertex> next;
      for (auto u : g_.neighbors(cur))
        if (alive.test(u) && (!has_prev || u != prev))
          next = u;
      if (!next)
        break;
      prev = cur;
      has_prev = true;
      cur = *next;
    }
    return a + b;
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

  const WeightedGraph &g_;
  const std::vector<ExactValue> &weights_;
  std::unordered_map<Configuration, GeneralizedPolynomial, MaskHash> memo_;
};

BigInt binom(std::size_t n, std::size_t k) {
  if (k > n)
    return 0;
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

} // namespace

GeneralizedPolynomial ip_bruteforce(const WeightedGraph &g, std::uint64_t state_budget) {
  return Lister(g, state_budget).run();
}

GeneralizedPolynomial independence_polynomial(const WeightedGraph &g) {
  Configuration alive(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    alive.set(v);
  return Branching(g).poly(alive);
}

GeneralizedPolynomial ip_path(std::size_t n) {
  GeneralizedPolynomial p;
  for (std::size_t k = 0; 2 * k <= n + 1; ++k)
    p.add_term(ExactValue::integer(static_cast<std::int64_t>(k)), binom(n - k + 1, k));
  return p;
}

GeneralizedPolynomial ip_path_recurrence(std::size_t n) {
  const auto x = GeneralizedPolynomial::monomial(ExactValue::integer(1));
  auto older = GeneralizedPolynomial::one();
  auto prev = GeneralizedPolynomial::one() + x;
  if (n == 0)
    return older;
  for (std::size_t i = 2; i <= n; ++i) {
    auto next = prev + older.shifted(ExactValue::integer(1));
    older = std::move(prev);
    prev = std::move(next);
  }
  return prev;
}

GeneralizedPolynomial ip_weighted_path(std::size_t n_half) {
  if (n_half < 2)
    return ip_bruteforce(path_graph(2 * n_half).reweighted(chain_profile(2 * n_half)));
  const auto ends = GeneralizedPolynomial::monomial(ExactValue::half() + ExactValue::bias()) +
                    GeneralizedPolynomial::monomial(ExactValue::half() - ExactValue::bias());
  return ip_path(2 * n_half - 2) + ends * ip_path(2 * n_half - 3) + ip_path(2 * n_half - 4).shifted(ExactValue::integer(1));
}

GeneralizedPolynomial a_poly(std::size_t n, int sign) {
  if (sign != 1 && sign != -1)
    throw StructuralError("a_poly: sign must be +1 or -1");
  return GeneralizedPolynomial::binomial(ExactValue(1, sign)) *
         GeneralizedPolynomial::binomial(ExactValue::integer(1)).pow(n);
}

GeneralizedPolynomial cl_lower_bound(const WeightedGraph &g, LowerBoundVariant variant) {
  const auto n = g.vertex_count();
  std::vector<std::size_t> by_size(n + 1, 0);
  for (const auto &s : all_independent_sets(g))
    ++by_size[s.count()];
  const auto unselected = a_poly(n, -1);
  const auto selected = ip_weighted_path(n + 1) - unselected;
  GeneralizedPolynomial result;
  for (std::size_t k = 0; k <= n; ++k)
    if (by_size[k] > 0) {
      auto term = selected.pow(k) * unselected.pow(n - k);
      for (const auto &[e, c] : term.terms())
        result.add_term(e, c * by_size[k]);
    }
  if (variant == LowerBoundVariant::GadgetFactors) {
    const auto m = g.edge_count();
    const auto pairs = n * (n - 1) / 2;
    result *= GeneralizedPolynomial::binomial(ExactValue::integer(1)).pow(m);
    result *= GeneralizedPolynomial::binomial(ExactValue::integer(2)).pow(pairs - m);
  }
  return result;
}

double evaluate_partition(const GeneralizedPolynomial &p, double beta, double w) {
  double total = 0.0;
  for (const auto &[e, c] : p.terms())
    total += c.convert_to<double>() * std::exp(-beta * e.evaluate(w));
  return total;
}

json polynomial_to_json(const GeneralizedPolynomial &p, const Rational &w) {
  std::vector<std::pair<ExactValue, BigInt>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [&](const auto &a, const auto &b) {
    return compare_at(a.first, b.first, w) < 0;
  });
  json out = json::array();
  for (const auto &[e, c] : terms)
    out.push_back({{"half", e.half_units()}, {"w", e.w_units()}, {"count", c.str()}});
  return out;
}

GeneralizedPolynomial polynomial_from_json(const json &j) {
  if (!j.is_array())
    throw ParseError("polynomial", "expected an array of terms");
  GeneralizedPolynomial p;
  for (const auto &t : j) {
    if (!t.is_object() || !t.contains("half") || !t.contains("w") || !t.contains("count") ||
        !t["half"].is_number_integer() || !t["w"].is_number_integer() || !t["count"].is_string())
      throw ParseError("polynomial", "expected {\"half\": int, \"w\": int, \"count\": string}");
    const auto text = t["count"].get<std::string>();
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw ParseError("count", "expected a non-negative decimal string");
    const ExactValue e(t["half"].get<std::int64_t>(), t["w"].get<std::int64_t>());
    if (p.coefficient(e) != 0)
      throw ParseError("polynomial", "duplicate exponent " + e.str());
    p.add_term(e, BigInt(text));
  }
  return p;
}

} // namespace misembed
