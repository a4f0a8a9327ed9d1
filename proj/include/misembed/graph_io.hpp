#pragma once

#include "misembed/graph.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>

namespace misembed {

inline constexpr int kFormatVersion = 1;

/// Reproducibility header carried by every file the tools write.
struct RunHeader {
  std::optional<std::uint64_t> seed;
  std::optional<Rational> w;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
  static RunHeader from_json(const nlohmann::json &j);
};

/// {"name", "n", "edges": [[u,v],...], "weights": [{"half","w"},...] | null}.
/// Unit-weighted graphs serialize weights as null. Real-weighted graphs use
/// an additional "real_weights" array.
nlohmann::json graph_to_json(const WeightedGraph &g);
/// Throws ParseError naming the offending field.
WeightedGraph graph_from_json(const nlohmann::json &j);

nlohmann::json exact_to_json(const ExactValue &v);
ExactValue exact_from_json(const nlohmann::json &j, const std::string &field);

void write_json_file(const std::filesystem::path &path, const nlohmann::json &j);
nlohmann::json read_json_file(const std::filesystem::path &path);

void write_graph_file(const std::filesystem::path &path, const WeightedGraph &g, const RunHeader &header);
WeightedGraph read_graph_file(const std::filesystem::path &path);

} // namespace misembed
