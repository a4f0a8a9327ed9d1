#pragma once

#include "misembed/interpretation.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace misembed {

/// Shortest round-trip decimal form of a double; identical on every
/// IEEE-754 platform.
std::string format_double(double x);

/// States CSV: a `# {json header}` line, the column row, then one row per
/// state: energy_half,energy_w,energy_float,config_hex and, once
/// interpreted, d,l,r_distance,r_deselect,tie. energy_half/energy_w are empty
/// in float mode; ratios are written as reduced fractions.
struct StatesTable {
  nlohmann::json header = nlohmann::json::object();
  std::size_t vertex_count = 0;
  std::vector<StateRecord> states;
  /// Empty, or one entry per state.
  std::vector<Annotation> annotations;

  bool annotated() const { return !annotations.empty(); }
};

void write_states_csv(std::ostream &out, const StatesTable &table);
/// Throws ParseError naming the offending column.
StatesTable read_states_csv(std::istream &in);

void write_states_file(const std::filesystem::path &path, const StatesTable &table);
StatesTable read_states_file(const std::filesystem::path &path);

} // namespace misembed
