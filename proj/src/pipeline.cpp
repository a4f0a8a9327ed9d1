#include "misembed/pipeline.hpp"

#include "misembed/errors.hpp"
#include "misembed/graph_io.hpp"
#include "misembed/polynomials.hpp"
#include "misembed/random_graph.hpp"
#include "misembed/states_io.hpp"
#include "misembed/subdivision.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

namespace misembed {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string header_line(const json &header) { return "# " + header.dump() + "\n"; }

template <class F> std::string render(F &&f) {
  std::ostringstream out;
  f(out);
  return out.str();
}

Rational rational_field(const json &j, const char *key, const Rational &fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return fallback;
  if (!it->is_string())
    throw ParseError(key, "expected a rational string 'a/b'");
  return Rational::parse(it->get<std::string>());
}

template <class T> T number_field(const json &j, const char *key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return fallback;
  if (!it->is_number())
    throw ParseError(key, "expected a number");
  return it->get<T>();
}

std::optional<double> optional_double(const json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    return std::nullopt;
  if (!it->is_number())
    throw ParseError(key, "expected a number or null");
  return it->get<double>();
}

json energy_to_json(const Energy &e) {
  json j;
  j["value"] = e.value;
  j["exact"] = e.exact ? exact_to_json(*e.exact) : json(nullptr);
  return j;
}

Energy energy_from_json(const json &j) {
  if (!j.is_object() || !j.contains("value"))
    throw ParseError("e_mwis", "expected {value, exact}");
  Energy e;
  e.value = j["value"].get<double>();
  if (j.contains("exact") && !j["exact"].is_null())
    e.exact = exact_from_json(j["exact"], "e_mwis.exact");
  return e;
}

json read_states_header(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw ParseError("header", path.string() + ": missing '# {json}' header line");
  try {
    return json::parse(line.substr(2));
  } catch (const json::exception &e) {
    throw ParseError("header", e.what());
  }
}

CrossingLattice read_embedding(const fs::path &path) { return embedding_from_json(read_json_file(path)); }

WeightedGraph enumeration_host(const CrossingLattice &cl, const RunConfig &cfg) {
  if (!cfg.modulated())
    return cl.host;
  return modified_cl_profile(cl, cfg.mu.value_or(0.0), cfg.nu.value_or(1.0));
}

WeightMode enumeration_mode(const RunConfig &cfg) {
  if (!cfg.modulated())
    return WeightMode::exact(cfg.w);
  return WeightMode::real(cfg.w, cfg.mu.value_or(0.0), cfg.nu.value_or(1.0));
}

/// A lattice whose w disagrees with the run would silently mix two
/// parameterizations.
void require_same_w(const CrossingLattice &cl, const RunConfig &cfg) {
  if (cl.w != cfg.w)
    throw StructuralError("embedding was built at w = " + cl.w.str() + " but the run uses w = " + cfg.w.str());
}

StatesTable enumerate_table(const CrossingLattice &cl, const RunConfig &cfg) {
  const auto host = enumeration_host(cl, cfg);
  const auto mode = enumeration_mode(cfg);
  auto options = cfg.solver_options();
  options.path_hint = cl.chains;
  auto spectrum = enumerate_low_energy(host, mode, cfg.delta_e_max, options);
  StatesTable table;
  table.header = stage_header("enumerate", cfg);
  table.header["e_mwis"] = energy_to_json(spectrum.window.e_mwis);
  table.header["mode"] = mode.is_exact() ? "exact" : "float";
  table.vertex_count = host.vertex_count();
  table.states = std::move(spectrum.states);
  return table;
}

struct CheckTally {
  std::size_t bound = 0, qubo = 0, shortcut = 0;
};

CheckTally check_annotations(const CrossingLattice &cl, const StatesTable &table) {
  CheckTally t;
  for (std::size_t i = 0; i < table.states.size(); ++i) {
    const auto &a = table.annotations[i];
    if (!a.bound_ok)
      ++t.bound;
    const auto q = build_qubo(cl, table.states[i].config);
    if (solve_qubo(q).value != static_cast<std::int64_t>(a.d))
      ++t.qubo;
    if (cl.variant == Variant::NonPlanar && qubo_mwis_shortcut(cl, q) != static_cast<std::int64_t>(a.d))
      ++t.shortcut;
  }
  return t;
}

void annotate_table(const CrossingLattice &cl, const RunConfig &cfg, StatesTable &table) {
  const InterpretationContext ctx(cl);
  const auto e_mwis = energy_from_json(table.header.at("e_mwis"));
  table.annotations.clear();
  table.annotations.reserve(table.states.size());
  for (const auto &rec : table.states)
    table.annotations.push_back(annotate(ctx, rec, e_mwis, cfg.tie_policy));
}

std::vector<AnnotatedState> annotated_states(const StatesTable &table) {
  if (!table.annotated())
    throw StructuralError("states file carries no interpretation columns; run interpret first");
  std::vector<AnnotatedState> out;
  out.reserve(table.states.size());
  for (std::size_t i = 0; i < table.states.size(); ++i)
    out.push_back({table.states[i], table.annotations[i]});
  return out;
}

void write_dos_csv(std::ostream &out, const JointDos &dos) {
  out << "dE_half,dE_w,dE_float,d,count\n";
  for (const auto &[key, count] : dos.counts)
    out << key.first.half_units() << ',' << key.first.w_units() << ','
        << format_double(key.first.evaluate(dos.w.to_double())) << ',' << key.second << ',' << count << '\n';
}

void write_peaks_csv(std::ostream &out, const PeakWindows &peaks) {
  out << "l,d,count\n";
  for (const auto &bin : peaks.bins)
    for (const auto &[d, count] : bin.d_histogram)
      out << bin.l << ',' << d << ',' << count << '\n';
}

std::vector<Rational> default_windows(const Rational &demax) {
  std::vector<Rational> edges;
  for (const Rational e : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)})
    if (e <= demax)
      edges.push_back(e);
  if (edges.empty() || edges.back() < demax)
    edges.push_back(demax);
  return edges;
}

StrategyComparison filtered(StrategyComparison cmp, const RunConfig &cfg) {
  for (auto &w : cmp.windows) {
    if (!cfg.strategy_distance)
      w.prob_distance.clear();
    if (!cfg.strategy_deselect)
      w.prob_deselect.clear();
  }
  return cmp;
}

void emit(OutputLog &log, const fs::path &dir, const std::string &stem, const std::string &format, const json &header,
          const std::string &csv) {
  if (format == "json") {
    json j;
    j["header"] = header;
    j["rows"] = csv_to_json(csv);
    log.write(dir / (stem + ".json"), j.dump(1) + "\n");
  } else {
    log.write(dir / (stem + ".csv"), header_line(header) + csv);
  }
}

} // namespace

SolverOptions RunConfig::solver_options() const {
  SolverOptions o;
  o.node_budget = node_budget;
  o.state_budget = state_budget;
  return o;
}

json RunConfig::to_json() const {
  json j;
  j["seed"] = seed;
  j["n"] = n;
  j["p"] = p;
  j["w"] = w.str();
  j["variant"] = to_string(variant);
  j["delta_e_max"] = delta_e_max.str();
  j["mu"] = mu ? json(*mu) : json(nullptr);
  j["nu"] = nu ? json(*nu) : json(nullptr);
  j["tie_policy"] = to_string(tie_policy);
  j["strategies"] = strategies_string(*this);
  j["budgets"] = {{"nodes", node_budget}, {"states", state_budget}};
  return j;
}

RunConfig RunConfig::from_json(const json &j) {
  if (!j.is_object())
    throw ParseError("config", "expected an object");
  RunConfig c;
  c.seed = number_field<std::uint64_t>(j, "seed", c.seed);
  c.n = number_field<std::size_t>(j, "n", c.n);
  c.p = number_field<double>(j, "p", c.p);
  c.w = rational_field(j, "w", c.w);
  if (j.contains("variant"))
    c.variant = parse_variant(j["variant"].get<std::string>());
  c.delta_e_max = rational_field(j, "delta_e_max", c.delta_e_max);
  c.mu = optional_double(j, "mu");
  c.nu = optional_double(j, "nu");
  if (j.contains("tie_policy"))
    c.tie_policy = parse_tie_policy(j["tie_policy"].get<std::string>());
  if (j.contains("strategies"))
    set_strategies(c, j["strategies"].get<std::string>());
  if (auto it = j.find("budgets"); it != j.end()) {
    c.node_budget = number_field<std::uint64_t>(*it, "nodes", c.node_budget);
    c.state_budget = number_field<std::uint64_t>(*it, "states", c.state_budget);
  }
  return c;
}

void set_strategies(RunConfig &cfg, const std::string &text) {
  if (text == "both") {
    cfg.strategy_distance = cfg.strategy_deselect = true;
  } else if (text == "distance") {
    cfg.strategy_distance = true;
    cfg.strategy_deselect = false;
  } else if (text == "deselect") {
    cfg.strategy_distance = false;
    cfg.strategy_deselect = true;
  } else {
    throw ParseError("strategy", "expected 'distance', 'deselect' or 'both', got '" + text + "'");
  }
}

std::string strategies_string(const RunConfig &cfg) {
  if (cfg.strategy_distance && cfg.strategy_deselect)
    return "both";
  return cfg.strategy_distance ? "distance" : "deselect";
}

void OutputLog::write(const fs::path &path, const std::string &content) {
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush())
      throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
  written.push_back(path);
}

void OutputLog::fail(std::string message) {
  check_failed = true;
  messages.push_back(std::move(message));
}

json stage_header(const std::string &stage, const RunConfig &cfg) {
  RunHeader h;
  h.seed = cfg.seed;
  h.w = cfg.w;
  h.extra["stage"] = stage;
  h.extra["config"] = cfg.to_json();
  return h.to_json();
}

RunConfig config_from_header(const json &header) {
  const auto h = RunHeader::from_json(header);
  if (!h.extra.contains("config"))
    throw ParseError("config", "header carries no run config");
  return RunConfig::from_json(h.extra["config"]);
}

RunConfig read_config(const fs::path &path) {
  if (path.extension() == ".csv")
    return config_from_header(read_states_header(path));
  const auto j = read_json_file(path);
  if (!j.contains("header"))
    throw ParseError("header", path.string() + " has no header");
  return config_from_header(j["header"]);
}

void cmd_generate(const RunConfig &cfg, const fs::path &out, OutputLog &log) {
  const auto g = random_gnp(cfg.n, cfg.p, cfg.seed);
  json j = graph_to_json(g);
  j["header"] = stage_header("generate", cfg);
  log.write(out, j.dump(1) + "\n");
}

void cmd_embed(const RunConfig &cfg, const fs::path &graph_in, const fs::path &out, bool check, OutputLog &log) {
  const auto g = read_graph_file(graph_in);
  const auto cl = build_cl(g, cfg.w, cfg.variant);
  json j = embedding_to_json(cl);
  j["header"] = stage_header("embed", cfg);
  if (check) {
    auto options = cfg.solver_options();
    options.path_hint = cl.chains;
    const auto report = calibrate(cl, options);
    j["calibration"] = {{"g1", report.g1}, {"g2", report.g2}, {"g3", report.g3}, {"g4", report.g4}};
    for (const auto &f : report.failures)
      log.fail("calibration: " + f);
  }
  log.write(out, j.dump(1) + "\n");
}

void cmd_enumerate(const RunConfig &cfg, const fs::path &embedding_in, const fs::path &out, bool check,
                   OutputLog &log) {
  const auto cl = read_embedding(embedding_in);
  require_same_w(cl, cfg);
  const auto table = enumerate_table(cl, cfg);
  if (check) {
    const auto host = enumeration_host(cl, cfg);
    const auto mode = enumeration_mode(cfg);
    const auto e_mwis = energy_from_json(table.header["e_mwis"]);
    const double limit = cfg.delta_e_max.to_double() + cfg.solver_options().float_tolerance;
    for (std::size_t i = 0; i < table.states.size(); ++i) {
      const auto &rec = table.states[i];
      if (!is_independent(host, rec.config))
        log.fail("state " + std::to_string(i) + " is not independent");
      if (delta_energy(rec.energy, e_mwis) > limit)
        log.fail("state " + std::to_string(i) + " lies outside the window");
      if (i > 0 && !canonical_less(table.states[i - 1], rec, mode))
        log.fail("states " + std::to_string(i - 1) + ", " + std::to_string(i) + " are out of canonical order");
    }
  }
  log.write(out, render([&](std::ostream &o) { write_states_csv(o, table); }));
}

void cmd_interpret(const RunConfig &cfg, const fs::path &embedding_in, const fs::path &states_in, const fs::path &out,
                   bool check, OutputLog &log) {
  const auto cl = read_embedding(embedding_in);
  require_same_w(cl, cfg);
  auto table = read_states_file(states_in);
  if (table.vertex_count != cl.host.vertex_count())
    throw StructuralError("states file does not match the embedding's host");
  annotate_table(cl, cfg, table);
  const auto e_mwis = table.header.at("e_mwis");
  const auto mode = table.header.value("mode", std::string("exact"));
  table.header = stage_header("interpret", cfg);
  table.header["e_mwis"] = e_mwis;
  table.header["mode"] = mode;
  if (check) {
    const auto t = check_annotations(cl, table);
    if (t.bound)
      log.fail("deselection bound violated on " + std::to_string(t.bound) + " states");
    if (t.qubo)
      log.fail("QUBO distance disagrees with brute force on " + std::to_string(t.qubo) + " states");
    if (t.shortcut)
      log.fail("MWIS shortcut disagrees with brute force on " + std::to_string(t.shortcut) + " states");
    log.messages.push_back("checked " + std::to_string(table.states.size()) + " states");
  }
  log.write(out, render([&](std::ostream &o) { write_states_csv(o, table); }));
}

void cmd_analyze(const RunConfig &cfg, const fs::path &embedding_in, const fs::path &states_in, const fs::path &out_dir,
                 const AnalyzeOptions &opts, OutputLog &log) {
  if (opts.format != "csv" && opts.format != "json")
    throw ParseError("format", "expected 'csv' or 'json', got '" + opts.format + "'");
  const auto cl = read_embedding(embedding_in);
  require_same_w(cl, cfg);
  const auto table = read_states_file(states_in);
  const auto states = annotated_states(table);
  const auto e_mwis = energy_from_json(table.header.at("e_mwis"));
  const bool exact = e_mwis.exact.has_value();
  const auto header = stage_header("analyze", cfg);

  json summary;
  summary["header"] = header;
  summary["states"] = states.size();
  summary["e_mwis"] = energy_to_json(e_mwis);

  const bool needs_exact = opts.dos || opts.tau || opts.fit_ec || opts.peaks || opts.compare;
  if (needs_exact && !exact)
    throw StructuralError("energy-resolved analyses need exact states; modulated runs support --localization only");

  std::optional<JointDos> dos;
  std::optional<TauCurve> curve;
  if (opts.dos || opts.tau || opts.fit_ec) {
    dos = joint_dos(states, e_mwis, cfg.w);
    curve = build_tau(*dos);
  }
  if (opts.dos)
    emit(log, out_dir, "dos", opts.format, header, render([&](std::ostream &o) { write_dos_csv(o, *dos); }));
  if (opts.tau)
    emit(log, out_dir, "taud", opts.format, header, render([&](std::ostream &o) { write_tau_csv(o, *curve); }));
  if (opts.fit_ec) {
    std::vector<DecayFit> fits;
    for (std::size_t d = 0; d <= std::min(opts.fit_d_max, curve->d_max); ++d)
      fits.push_back(fit_ec(*curve, d, opts.fit_lo, opts.fit_hi));
    emit(log, out_dir, "ecfit", opts.format, header, render([&](std::ostream &o) { write_ecfit_csv(o, fits); }));
  }
  if (opts.peaks) {
    const auto peaks = peak_windows(states, e_mwis, cfg.w);
    summary["peaks"] = {{"unbinned", peaks.unbinned}, {"wide_bias_warning", peaks.wide_bias_warning}};
    emit(log, out_dir, "peaks", opts.format, header, render([&](std::ostream &o) { write_peaks_csv(o, peaks); }));
  }
  if (opts.localization) {
    std::vector<StateRecord> records;
    for (const auto &s : states)
      records.push_back(s.record);
    const auto map = defect_localization(cl, records);
    summary["localization"] = {{"center_share", map.center_share}, {"degenerate", map.degenerate}};
    emit(log, out_dir, "localization", opts.format, header,
         render([&](std::ostream &o) { write_localization_csv(o, map); }));
  }
  if (opts.compare) {
    const auto windows = opts.windows.empty() ? default_windows(cfg.delta_e_max) : opts.windows;
    const auto cmp = filtered(strategy_comparison(states, e_mwis, cfg.w, windows), cfg);
    json means = json::array();
    for (const auto &w : cmp.windows) {
      json m{{"dE", w.delta_e.str()}, {"count", w.count}};
      if (cfg.strategy_distance)
        m["mean_r_distance"] = w.mean_r_distance;
      if (cfg.strategy_deselect)
        m["mean_r_deselect"] = w.mean_r_deselect;
      means.push_back(std::move(m));
    }
    summary["compare"] = std::move(means);
    emit(log, out_dir, "compare", opts.format, header, render([&](std::ostream &o) { write_compare_csv(o, cmp); }));
  }
  log.write(out_dir / "summary.json", summary.dump(1) + "\n");
}

void cmd_polynomial(const RunConfig &cfg, const fs::path &embedding_in, const fs::path &out, bool lower_bound,
                    bool check, OutputLog &log) {
  const auto cl = read_embedding(embedding_in);
  require_same_w(cl, cfg);
  const auto ip = independence_polynomial(cl.host);
  json j;
  j["header"] = stage_header("polynomial", cfg);
  j["host"] = polynomial_to_json(ip, cfg.w);
  if (lower_bound || check) {
    const auto variant = cl.variant == Variant::NonPlanar ? LowerBoundVariant::NonPlanar
                                                          : LowerBoundVariant::GadgetFactors;
    const auto lb = cl_lower_bound(cl.source, variant);
    j["lower_bound"] = polynomial_to_json(lb, cfg.w);
    const bool holds = coefficientwise_leq(lb, ip);
    j["lower_bound_holds"] = holds;
    if (check && !holds) {
      if (variant == LowerBoundVariant::NonPlanar)
        log.fail("lower-bound polynomial exceeds the host polynomial");
      else
        log.messages.push_back("diagnostic: gadget-factor lower bound exceeds the host polynomial");
    }
  }
  log.write(out, j.dump(1) + "\n");
}

void cmd_pathology(const RunConfig &cfg, std::size_t k_max, bool weighted, const fs::path &out, OutputLog &log) {
  std::vector<PathologyReport> reports;
  for (std::size_t k = 1; k <= k_max; ++k)
    reports.push_back(odd_cycle_pathology(k, weighted ? std::optional<Rational>(cfg.w) : std::nullopt));
  auto header = stage_header("pathology", cfg);
  header["weighted"] = weighted;
  log.write(out, header_line(header) + render([&](std::ostream &o) { write_pathology_csv(o, reports); }));
}

void cmd_scaling(const RunConfig &cfg, const std::vector<std::size_t> &sizes, const std::vector<std::uint64_t> &seeds,
                 std::size_t jobs, const fs::path &out, OutputLog &log) {
  std::vector<RunConfig> runs;
  for (const auto n : sizes)
    for (const auto seed : seeds) {
      auto c = cfg;
      c.n = n;
      c.seed = seed;
      runs.push_back(c);
    }
  const auto one = [](const RunConfig &c) {
    const auto cl = build_cl(random_gnp(c.n, c.p, c.seed), c.w, c.variant);
    auto options = c.solver_options();
    options.path_hint = cl.chains;
    const auto spectrum = enumerate_low_energy(cl.host, WeightMode::exact(c.w), c.delta_e_max, options);
    const InterpretationContext ctx(cl);
    const auto states = annotate_spectrum(ctx, spectrum, c.tie_policy);
    return summarize_instance(ctx, c.seed, c.delta_e_max, states, spectrum.window.e_mwis);
  };
  std::vector<InstanceSummary> summaries(runs.size());
  jobs = std::max<std::size_t>(1, jobs);
  for (std::size_t start = 0; start < runs.size(); start += jobs) {
    std::vector<std::future<InstanceSummary>> batch;
    for (std::size_t i = start; i < std::min(runs.size(), start + jobs); ++i)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, one, runs[i]));
    for (std::size_t i = 0; i < batch.size(); ++i)
      summaries[start + i] = batch[i].get();
  }
  const auto report = scaling_report(std::move(summaries));
  if (report.bound_violations)
    log.fail("deselection bound violated on " + std::to_string(report.bound_violations) + " states");
  log.write(out, header_line(stage_header("scaling", cfg)) +
                     render([&](std::ostream &o) { write_scaling_csv(o, report); }));
}

void cmd_run(const RunConfig &cfg, const fs::path &out_dir, OutputLog &log) {
  cmd_generate(cfg, out_dir / "graph.json", log);
  cmd_embed(cfg, out_dir / "graph.json", out_dir / "embedding.json", false, log);
  cmd_enumerate(cfg, out_dir / "embedding.json", out_dir / "states.csv", false, log);
  cmd_interpret(cfg, out_dir / "embedding.json", out_dir / "states.csv", out_dir / "states.csv", false, log);
  AnalyzeOptions opts;
  opts.localization = true;
  if (!cfg.modulated())
    opts.dos = opts.tau = opts.fit_ec = opts.peaks = opts.compare = true;
  cmd_analyze(cfg, out_dir / "embedding.json", out_dir / "states.csv", out_dir, opts, log);
  if (!cfg.modulated())
    cmd_polynomial(cfg, out_dir / "embedding.json", out_dir / "polynomial.json", true, false, log);
}

json csv_to_json(const std::string &csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> columns;
  json rows = json::array();
  const auto split = [](const std::string &s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ','))
      out.push_back(cell);
    if (!s.empty() && s.back() == ',')
      out.emplace_back();
    return out;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("# ", 0) == 0)
      continue;
    if (columns.empty()) {
      columns = split(line);
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != columns.size())
      throw ParseError("row", "expected " + std::to_string(columns.size()) + " cells in '" + line + "'");
    json row = json::object();
    for (std::size_t i = 0; i < cells.size(); ++i)
      row[columns[i]] = cells[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace misembed
