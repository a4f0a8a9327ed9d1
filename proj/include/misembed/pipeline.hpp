#pragma once

#include "misembed/analysis.hpp"
#include "misembed/crossing_lattice.hpp"
#include "misembed/interpretation.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace misembed {

/// Everything a pipeline stage depends on. Serialized into every output
/// header; the output directory is where a run goes, not what it computes,
/// so it is left out.
struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t n = 5;
  double p = 0.5;
  Rational w{1, 8};
  Variant variant = Variant::Gadgeted;
  Rational delta_e_max{2};
  std::optional<double> mu;
  std::optional<double> nu;
  TiePolicy tie_policy = TiePolicy::Pessimistic;
  bool strategy_distance = true;
  bool strategy_deselect = true;
  std::uint64_t node_budget = 1'000'000'000;
  std::uint64_t state_budget = 10'000'000;

  bool modulated() const { return mu.has_value() || nu.has_value(); }
  SolverOptions solver_options() const;

  nlohmann::json to_json() const;
  /// Missing fields keep their defaults; malformed ones throw ParseError.
  static RunConfig from_json(const nlohmann::json &j);
};

/// "distance", "deselect" or "both".
void set_strategies(RunConfig &cfg, const std::string &text);
std::string strategies_string(const RunConfig &cfg);

/// Files written so far by a stage, for error records.
struct OutputLog {
  std::vector<std::filesystem::path> written;
  /// Human-readable findings of --check runs.
  std::vector<std::string> messages;
  bool check_failed = false;

  /// Whole-file write through a temporary and a rename.
  void write(const std::filesystem::path &path, const std::string &content);
  void fail(std::string message);
};

/// Output header for `stage`: format version, stage name and the config.
nlohmann::json stage_header(const std::string &stage, const RunConfig &cfg);
/// The config recorded in a header written by `stage_header`.
RunConfig config_from_header(const nlohmann::json &header);

/// Config of a graph, embedding or states file.
RunConfig read_config(const std::filesystem::path &path);

void cmd_generate(const RunConfig &cfg, const std::filesystem::path &out, OutputLog &log);
/// --check runs the exhaustive embedding contract (calibrate).
void cmd_embed(const RunConfig &cfg, const std::filesystem::path &graph_in, const std::filesystem::path &out,
               bool check, OutputLog &log);
/// Exact mode on the w lattice, or float mode on the modulated profile when
/// mu or nu is set. --check verifies independence, window and order.
void cmd_enumerate(const RunConfig &cfg, const std::filesystem::path &embedding_in, const std::filesystem::path &out,
                   bool check, OutputLog &log);
/// Appends d,l,r_distance,r_deselect,tie; `out` may equal `states_in`.
/// --check: deselection bound on every exact state, and QUBO (plus the MWIS
/// shortcut on gadget-free lattices) against the brute-force distance.
void cmd_interpret(const RunConfig &cfg, const std::filesystem::path &embedding_in,
                   const std::filesystem::path &states_in, const std::filesystem::path &out, bool check,
                   OutputLog &log);

struct AnalyzeOptions {
  bool dos = false;
  bool tau = false;
  bool fit_ec = false;
  bool peaks = false;
  bool localization = false;
  bool compare = false;
  /// Fits d = 0..fit_d_max (capped at the largest d present).
  std::size_t fit_d_max = 3;
  std::optional<double> fit_lo, fit_hi;
  /// Cumulative window edges; default 1/2, 1, 3/2, 2 up to delta_e_max.
  std::vector<Rational> windows;
  std::string format = "csv";
};

/// Writes the selected tables into `out_dir` (dos, taud, ecfit, peaks,
/// localization, compare) plus summary.json.
void cmd_analyze(const RunConfig &cfg, const std::filesystem::path &embedding_in,
                 const std::filesystem::path &states_in, const std::filesystem::path &out_dir,
                 const AnalyzeOptions &opts, OutputLog &log);

/// Host independence polynomial; with `lower_bound`, also the lower-bound
/// polynomial of the lattice's variant. --check compares them coefficient-wise
/// (a failure on the gadgeted variant is reported but does not fail the run).
void cmd_polynomial(const RunConfig &cfg, const std::filesystem::path &embedding_in, const std::filesystem::path &out,
                    bool lower_bound, bool check, OutputLog &log);

/// Odd-cycle pathology for k = 1..k_max; `weighted` applies the W_w profile.
void cmd_pathology(const RunConfig &cfg, std::size_t k_max, bool weighted, const std::filesystem::path &out,
                   OutputLog &log);

/// generate -> embed -> enumerate -> interpret -> summarize for every
/// (n, seed), fanned out over `jobs` threads; output order is fixed.
void cmd_scaling(const RunConfig &cfg, const std::vector<std::size_t> &sizes, const std::vector<std::uint64_t> &seeds,
                 std::size_t jobs, const std::filesystem::path &out, OutputLog &log);

/// The whole single-instance pipeline into `out_dir`.
void cmd_run(const RunConfig &cfg, const std::filesystem::path &out_dir, OutputLog &log);

/// A CSV table (optionally preceded by a `# ` comment line) as a JSON array of
/// row objects with string values.
nlohmann::json csv_to_json(const std::string &csv);

} // namespace misembed
