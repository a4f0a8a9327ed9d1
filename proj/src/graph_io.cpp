#include "misembed/graph_io.hpp"

#include "misembed/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace misembed {

using nlohmann::json;

namespace {

std::int64_t require_int(const json &j, const std::string &field) {
  if (!j.is_number_integer())
    throw ParseError(field, "expected an integer");
  return j.get<std::int64_t>();
}

} // namespace

json RunHeader::to_json() const {
  json j = extra;
  j["format_version"] = kFormatVersion;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["w"] = w ? json(w->str()) : json(nullptr);
  return j;
}

RunHeader RunHeader::from_json(const json &j) {
  RunHeader h;
  if (!j.is_object())
    throw ParseError("header", "expected an object");
  if (auto it = j.find("format_version"); it == j.end() || *it != kFormatVersion)
    throw ParseError("format_version", "unsupported or missing format version");
  if (auto it = j.find("seed"); it != j.end() && !it->is_null())
    h.seed = it->get<std::uint64_t>();
  if (auto it = j.find("w"); it != j.end() && !it->is_null())
    h.w = Rational::parse(it->get<std::string>());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "seed" && it.key() != "w" && it.key() != "format_version")
      h.extra[it.key()] = it.value();
  return h;
}

json exact_to_json(const ExactValue &v) { return {{"half", v.half_units()}, {"w", v.w_units()}}; }

ExactValue exact_from_json(const json &j, const std::string &field) {
  if (!j.is_object() || !j.contains("half") || !j.contains("w"))
    throw ParseError(field, "expected {\"half\": int, \"w\": int}");
  return {require_int(j["half"], field + ".half"), require_int(j["w"], field + ".w")};
}

json graph_to_json(const WeightedGraph &g) {
  json j;
  j["name"] = g.name();
  j["n"] = g.vertex_count();
  json edges = json::array();
  for (const auto &[u, v] : g.edges())
    edges.push_back({u, v});
  j["edges"] = std::move(edges);
  if (g.has_real_weights()) {
    j["weights"] = nullptr;
    j["real_weights"] = g.real_weights();
  } else if (g.is_unit_weighted()) {
    j["weights"] = nullptr;
  } else {
    json ws = json::array();
    for (const auto &x : g.exact_weights())
      ws.push_back(exact_to_json(x));
    j["weights"] = std::move(ws);
  }
  return j;
}

WeightedGraph graph_from_json(const json &j) {
  if (!j.is_object())
    throw ParseError("graph", "expected an object");
  if (!j.contains("n"))
    throw ParseError("n", "missing");
  const auto n_signed = require_int(j["n"], "n");
  if (n_signed < 0)
    throw ParseError("n", "negative vertex count");
  const auto n = static_cast<std::size_t>(n_signed);
  if (!j.contains("edges") || !j["edges"].is_array())
    throw ParseError("edges", "expected an array");

  std::vector<Edge> edges;
  std::vector<Edge> seen;
  const auto &arr = j["edges"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    if (!arr[i].is_array() || arr[i].size() != 2)
      throw ParseError(field, "expected [u, v]");
    const auto u = require_int(arr[i][0], field);
    const auto v = require_int(arr[i][1], field);
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
      throw ParseError(field, "endpoint out of range");
    if (u == v)
      throw ParseError(field, "self-loop");
    edges.emplace_back(static_cast<std::size_t>(std::min(u, v)), static_cast<std::size_t>(std::max(u, v)));
  }
  {
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
      throw ParseError("edges", "duplicate edge [" + std::to_string(dup->first) + "," + std::to_string(dup->second) + "]");
  }

  const std::string name = j.value("name", std::string{});
  if (auto it = j.find("real_weights"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != n)
      throw ParseError("real_weights", "expected " + std::to_string(n) + " numbers");
    return WeightedGraph::with_real_weights(n, std::move(edges), it->get<std::vector<double>>(), name);
  }
  std::vector<ExactValue> weights;
  if (auto it = j.find("weights"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != n)
      throw ParseError("weights", "expected " + std::to_string(n) + " entries");
    for (std::size_t i = 0; i < n; ++i)
      weights.push_back(exact_from_json((*it)[i], "weights[" + std::to_string(i) + "]"));
  }
  return {n, std::move(edges), std::move(weights), name};
}

void write_json_file(const std::filesystem::path &path, const json &j) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(1) << '\n';
}

json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw ParseError(path.string(), std::string("malformed JSON: ") + e.what());
  }
}

void write_graph_file(const std::filesystem::path &path, const WeightedGraph &g, const RunHeader &header) {
  json j = graph_to_json(g);
  j["header"] = header.to_json();
  write_json_file(path, j);
}

WeightedGraph read_graph_file(const std::filesystem::path &path) { return graph_from_json(read_json_file(path)); }

} // namespace misembed
