#include "misembed/cli.hpp"

#include "misembed/errors.hpp"
#include "misembed/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace misembed {

namespace {

/// Config flags shared by all subcommands. Unset flags keep the value read
/// from the input file's header (or the default for the first stage).
struct ConfigFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<double> p;
  std::optional<std::string> w;
  std::optional<std::string> variant;
  std::optional<std::string> demax;
  std::optional<double> mu, nu;
  std::optional<std::string> tie;
  std::optional<std::string> strategy;
  std::optional<std::uint64_t> node_budget, state_budget;

  void attach(CLI::App *app) {
    app->add_option("--seed", seed, "PRNG seed");
    app->add_option("--n", n, "Source vertex count");
    app->add_option("--p", p, "Edge probability");
    app->add_option("--w", w, "Bias w as a rational a/b");
    app->add_option("--variant", variant, "nonplanar | gadgeted");
    app->add_option("--demax", demax, "Energy window above E_MWIS, rational");
    app->add_option("--mu", mu, "Profile modulation mu");
    app->add_option("--nu", nu, "Profile modulation nu");
    app->add_option("--tie", tie, "pessimistic | optimistic | first | last");
    app->add_option("--strategy", strategy, "distance | deselect | both");
    app->add_option("--node-budget", node_budget, "Search node budget");
    app->add_option("--state-budget", state_budget, "Enumerated state budget");
  }

  RunConfig apply(RunConfig c) const {
    if (seed)
      c.seed = *seed;
    if (n)
      c.n = *n;
    if (p)
      c.p = *p;
    if (w)
      c.w = Rational::parse(*w);
    if (variant)
      c.variant = parse_variant(*variant);
    if (demax)
      c.delta_e_max = Rational::parse(*demax);
    if (mu)
      c.mu = *mu;
    if (nu)
      c.nu = *nu;
    if (tie)
      c.tie_policy = parse_tie_policy(*tie);
    if (strategy)
      set_strategies(c, *strategy);
    if (node_budget)
      c.node_budget = *node_budget;
    if (state_budget)
      c.state_budget = *state_budget;
    return c;
  }
};

std::vector<std::string> written_strings(const OutputLog &log) {
  std::vector<std::string> out;
  for (const auto &p : log.written)
    out.push_back(p.string());
  return out;
}

int report_error(const std::string &kind, const std::string &message, const OutputLog &log, int code,
                 const std::string &field = {}) {
  nlohmann::json rec{{"error", kind}, {"message", message}, {"partial_outputs", written_strings(log)}};
  if (!field.empty())
    rec["field"] = field;
  std::cerr << rec.dump() << '\n';
  return code;
}

std::vector<std::size_t> parse_sizes(const std::string &text) {
  // "3..6" or "3,4,5"
  std::vector<std::size_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = std::stoul(text.substr(0, dots));
    const auto hi = std::stoul(text.substr(dots + 2));
    for (auto v = lo; v <= hi; ++v)
      out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(std::stoul(text.substr(start, comma - start)));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return out;
}

} // namespace

int cli_main(int argc, const char *const *argv) {
  CLI::App app{"Embed MIS instances into weighted host graphs and analyze their low-energy spectra"};
  app.require_subcommand(1);

  ConfigFlags flags;
  bool check = false;
  std::string in, in_states, out = "out";

  auto *gen = app.add_subcommand("generate", "Random G(n, p) source graph");
  flags.attach(gen);
  gen->add_option("--out", out, "Graph JSON path")->required();

  auto *emb = app.add_subcommand("embed", "Crossing-lattice host of a graph");
  flags.attach(emb);
  emb->add_option("--in", in, "Graph JSON")->required()->check(CLI::ExistingFile);
  emb->add_option("--out", out, "Embedding JSON path")->required();
  emb->add_flag("--check", check, "Run the exhaustive embedding contract");

  auto *enu = app.add_subcommand("enumerate", "Low-energy states of an embedding's host");
  flags.attach(enu);
  enu->add_option("--in", in, "Embedding JSON")->required()->check(CLI::ExistingFile);
  enu->add_option("--out", out, "States CSV path")->required();
  enu->add_flag("--check", check, "Verify independence, window and order");

  auto *itp = app.add_subcommand("interpret", "Distance and deselection columns for a states file");
  flags.attach(itp);
  itp->add_option("--embedding", in, "Embedding JSON")->required()->check(CLI::ExistingFile);
  itp->add_option("--states", in_states, "States CSV")->required()->check(CLI::ExistingFile);
  itp->add_option("--out", out, "Output CSV (defaults to --states)");
  itp->add_flag("--check", check, "Deselection bound and QUBO oracle checks");

  AnalyzeOptions aopts;
  std::vector<std::string> windows;
  auto *ana = app.add_subcommand("analyze", "DoS, tau_d, E_c fits, peaks, localization, strategy comparison");
  flags.attach(ana);
  ana->add_option("--embedding", in, "Embedding JSON")->required()->check(CLI::ExistingFile);
  ana->add_option("--states", in_states, "Interpreted states CSV")->required()->check(CLI::ExistingFile);
  ana->add_option("--out", out, "Output directory")->required();
  ana->add_flag("--dos", aopts.dos, "Joint (dE, d) density of states");
  ana->add_flag("--tau", aopts.tau, "tau_d(E) curve");
  ana->add_flag("--fit-ec", aopts.fit_ec, "E_c(d) fits");
  ana->add_option("--fit-dmax", aopts.fit_d_max, "Largest d to fit");
  ana->add_option("--fit-lo", aopts.fit_lo, "Fit window start (dE)");
  ana->add_option("--fit-hi", aopts.fit_hi, "Fit window end (dE)");
  ana->add_flag("--peaks", aopts.peaks, "Domain-wall peak windows");
  ana->add_flag("--localization", aopts.localization, "Per-vertex wall prevalence");
  ana->add_flag("--compare", aopts.compare, "Distance vs deselection over cumulative windows");
  ana->add_option("--windows", windows, "Window edges as rationals");
  ana->add_option("--format", aopts.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  bool lower_bound = false;
  auto *pol = app.add_subcommand("polynomial", "Independence polynomial of an embedding's host");
  flags.attach(pol);
  pol->add_option("--in", in, "Embedding JSON")->required()->check(CLI::ExistingFile);
  pol->add_option("--out", out, "Polynomial JSON path")->required();
  pol->add_flag("--lower-bound", lower_bound, "Also write the lower-bound polynomial");
  pol->add_flag("--check", check, "Coefficient-wise lower-bound check");

  std::size_t k_max = 6;
  bool weighted = false;
  auto *pat = app.add_subcommand("pathology", "Odd-cycle subdivision pathology");
  flags.attach(pat);
  pat->add_option("--k-max", k_max, "Largest number of cycles");
  pat->add_flag("--weighted", weighted, "Apply the W_w profile");
  pat->add_option("--out", out, "Pathology CSV path")->required();

  std::string sizes = "3..6", seeds = "1..5";
  std::size_t jobs = 1;
  auto *sca = app.add_subcommand("scaling", "Batch summary over sizes and seeds");
  flags.attach(sca);
  sca->add_option("--sizes", sizes, "N range 'a..b' or list 'a,b,c'");
  sca->add_option("--seeds", seeds, "Seed range or list");
  sca->add_option("--jobs", jobs, "Worker threads");
  sca->add_option("--out", out, "Scaling CSV path")->required();

  auto *run = app.add_subcommand("run", "Whole pipeline for one instance");
  flags.attach(run);
  run->add_option("--out", out, "Output directory")->required();

  OutputLog log;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      cmd_generate(flags.apply({}), out, log);
    } else if (emb->parsed()) {
      cmd_embed(flags.apply(read_config(in)), in, out, check, log);
    } else if (enu->parsed()) {
      cmd_enumerate(flags.apply(read_config(in)), in, out, check, log);
    } else if (itp->parsed()) {
      cmd_interpret(flags.apply(read_config(in_states)), in, in_states, out == "out" ? in_states : out, check, log);
    } else if (ana->parsed()) {
      for (const auto &e : windows)
        aopts.windows.push_back(Rational::parse(e));
      cmd_analyze(flags.apply(read_config(in_states)), in, in_states, out, aopts, log);
    } else if (pol->parsed()) {
      cmd_polynomial(flags.apply(read_config(in)), in, out, lower_bound, check, log);
    } else if (pat->parsed()) {
      cmd_pathology(flags.apply({}), k_max, weighted, out, log);
    } else if (sca->parsed()) {
      std::vector<std::uint64_t> seed_list;
      for (const auto s : parse_sizes(seeds))
        seed_list.push_back(s);
      cmd_scaling(flags.apply({}), parse_sizes(sizes), seed_list, jobs, out, log);
    } else if (run->parsed()) {
      cmd_run(flags.apply({}), out, log);
    }
  } catch (const InvariantViolation &e) {
    return report_error("invariant_violation", e.what(), log, 2);
  } catch (const BudgetExceeded &e) {
    return report_error("budget_exceeded", e.what(), log, 3);
  } catch (const ParseError &e) {
    return report_error("parse_error", e.what(), log, 1, e.field());
  } catch (const StructuralError &e) {
    return report_error("structural_error", e.what(), log, 1);
  } catch (const std::exception &e) {
    return report_error("error", e.what(), log, 1);
  }

  for (const auto &m : log.messages)
    std::cout << m << '\n';
  if (log.check_failed)
    return report_error("check_failed", "one or more invariant checks failed", log, 2);
  return 0;
}

} // namespace misembed
