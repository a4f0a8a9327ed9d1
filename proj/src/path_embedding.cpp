#include "misembed/path_embedding.hpp"

#include "misembed/errors.hpp"

#include <cmath>

namespace misembed {

std::vector<ExactValue> chain_profile(std::size_t length) {
  if (length < 2 || length % 2 != 0)
    throw StructuralError("chain length must be even and at least 2");
  std::vector<ExactValue> ws(length, ExactValue::integer(1));
  ws.front() = ExactValue::half() + ExactValue::bias();
  ws.back() = ExactValue::half() - ExactValue::bias();
  return ws;
}

PathEmbedding build_path_embedding(std::size_t n_half, const Rational &w) {
  if (n_half < 1)
    throw StructuralError("path embedding needs N >= 1");
  PathEmbedding pe;
  pe.n_half = n_half;
  pe.w = w;
  const auto length = 2 * n_half;
  pe.host = path_graph(length).reweighted(chain_profile(length));
  pe.host.set_name("wP_" + std::to_string(length));
  pe.f_selected = Configuration(length);
  pe.f_unselected = Configuration(length);
  for (std::size_t i = 0; i < length; ++i)
    (i % 2 == 0 ? pe.f_selected : pe.f_unselected).set(i);
  return pe;
}

namespace {

std::vector<Vertex> identity_chain(std::size_t length) {
  std::vector<Vertex> chain(length);
  for (std::size_t i = 0; i < length; ++i)
    chain[i] = i;
  return chain;
}

} // namespace

DefectReport find_domain_walls(const std::vector<Vertex> &chain, const Configuration &s) {
  DefectReport report;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!s.test(chain[i]) && !s.test(chain[i + 1]))
      report.wall_positions.push_back(i);
  return report;
}

DefectReport find_domain_walls(const PathEmbedding &pe, const Configuration &s) {
  if (s.size() != pe.length())
    throw StructuralError("configuration does not index the path host");
  return find_domain_walls(identity_chain(pe.length()), s);
}

PathDistance path_distance(const std::vector<Vertex> &chain, const Configuration &s) {
  PathDistance out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const bool bit = s.test(chain[i]);
    const bool odd = i % 2 == 0;
    out.to_selected += bit != odd ? 1 : 0;
    out.to_unselected += bit == odd ? 1 : 0;
  }
  if (out.to_selected < out.to_unselected) {
    out.d = out.to_selected;
    out.nearest = Nearest::Selected;
  } else if (out.to_unselected < out.to_selected) {
    out.d = out.to_unselected;
    out.nearest = Nearest::Unselected;
  } else {
    out.d = out.to_selected;
    out.nearest = Nearest::Tie;
  }
  return out;
}

PathDistance path_distance(const PathEmbedding &pe, const Configuration &s) {
  if (s.size() != pe.length())
    throw StructuralError("configuration does not index the path host");
  return path_distance(identity_chain(pe.length()), s);
}

double penalty(std::size_t n, double mu, double nu) {
  if (!(mu >= 0.0) || !(nu >= 1.0))
    throw StructuralError("penalty requires mu >= 0 and nu >= 1");
  const auto x = static_cast<double>(n);
  return std::pow(x + 1.0, mu) * std::pow(nu, x);
}

std::size_t endpoint_distance(std::size_t i, std::size_t n_half) {
  if (i < 1 || i > 2 * n_half)
    throw StructuralError("vertex index out of range");
  return std::min(i - 1, 2 * n_half - i);
}

WeightedGraph modified_path_profile(const PathEmbedding &pe, double mu, double nu) {
  const auto base = pe.host.numeric_weights(WeightMode::real(pe.w));
  std::vector<double> ws(base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    ws[i] = base[i] * penalty(endpoint_distance(i + 1, pe.n_half), mu, nu);
  auto g = pe.host.reweighted_real(std::move(ws));
  g.set_name(pe.host.name() + "_mod");
  return g;
}

nlohmann::json path_annotation(const PathEmbedding &pe) {
  return {{"kind", "path"}, {"N", pe.n_half}, {"w", pe.w.str()}};
}

} // namespace misembed
