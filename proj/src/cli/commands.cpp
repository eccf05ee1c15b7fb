#include "thmc/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "json_out.hpp"
#include "thmc/dataset.hpp"
#include "thmc/enumerate.hpp"
#include "thmc/fiber.hpp"
#include "thmc/mcmc.hpp"
#include "thmc/stats.hpp"

namespace thmc::cli {

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct TestArgs {
  std::string input;
  std::string map = "1=1,2=2";
  std::uint64_t samples = 10'000;
  std::uint64_t burnin = 5'000;
  std::uint64_t seed = 1;
  std::string output;
  std::string histogram;
  std::string weights;
  bool add_observed = false;
  unsigned chains = 1;
  double bin_width = 0.1;
};

struct VerifyArgs {
  int length = 0;
  int n_max = 0;
  std::string families = "all";
  std::string report;
  std::uint64_t max_elements = FiberBudget{}.max_elements;
  std::uint64_t max_nodes = FiberBudget{}.max_nodes;
};

struct FiberArgs {
  int length = 0;
  std::string b;
  std::string map = "1=1,2=2";
  std::uint64_t max_elements = FiberBudget{}.max_elements;
  std::uint64_t max_nodes = FiberBudget{}.max_nodes;
};

struct MovesArgs {
  std::string action = "enumerate";
  int length = 0;
  std::string families = "all";
};

std::vector<Family> families_from(const std::string& text) {
  if (text == "all") return {kAllFamilies.begin(), kAllFamilies.end()};
  return parse_family_list(text);
}

Json provenance(const std::string& command, Json flags) {
  Json p;
  p["tool"] = "thmc";
  p["version"] = kToolVersion;
  p["command"] = command;
  p["flags"] = std::move(flags);
  return p;
}

Json stat_json(const TransitionStat& b) { return Json::array({b.b11, b.b12, b.b21, b.b22}); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open " + path + " for writing");
  f << text;
  if (!f) throw InvalidArgument("failed writing " + path);
}

std::string format_double(double v, const char* fmt = "%.17g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string render_table(const PathTable& table, const SymbolMap& map) {
  std::string s;
  for (const auto& [path, count] : table) {
    if (!s.empty()) s.push_back(' ');
    for (int t = 1; t <= path.length(); ++t) s.push_back(map.symbol(path.state(t)));
    s += ":" + std::to_string(count);
  }
  return s;
}

int cmd_test(const TestArgs& a, std::ostream& out) {
  const SymbolMap map = SymbolMap::parse(a.map);
  const Dataset data = ingest(a.input, map);
  ExactTestOptions options;
  options.steps = a.samples;
  options.burnin = a.burnin;
  options.seed = a.seed;
  options.add_observed = a.add_observed;
  options.chains = a.chains;
  options.bin_width = a.bin_width;
  if (!a.weights.empty()) options.weights = FamilyWeights::parse(a.weights);

  const TestResult r = exact_test(data.table, options);
  const InitialFreq init = initial_freq(data.table);

  Json flags;
  flags["input"] = a.input;
  flags["map"] = map.str();
  flags["samples"] = a.samples;
  flags["burnin"] = a.burnin;
  flags["seed"] = a.seed;
  flags["weights"] = options.weights.str();
  flags["add_observed"] = a.add_observed;
  flags["chains"] = a.chains;
  flags["bin_width"] = a.bin_width;
  flags["output"] = a.output;
  flags["histogram"] = a.histogram;

  Json j;
  j["n"] = r.n;
  j["T"] = r.length;
  j["b"] = stat_json(r.b);
  j["initial"] = Json::array({init.state1, init.state2});
  j["L"] = r.L_observed;
  j["df"] = r.df;
  j["p_asymptotic"] = r.p_asymptotic;
  j["p_exact"] = r.p_exact;
  j["samples"] = r.samples;
  j["burnin"] = r.burnin;
  j["seed"] = r.seed;
  j["chains"] = r.chains;
  j["acceptance_rate"] = r.acceptance_rate;
  j["null_proposal_rate"] = r.null_proposal_rate;
  Json bins = Json::array();
  for (const HistogramBin& bin : r.histogram) {
    bins.push_back(Json{{"bin_lower", bin.lower}, {"count", bin.count}});
  }
  j["histogram"] = std::move(bins);
  j["provenance"] = provenance("test", std::move(flags));
  const std::string doc = dump_json(j);

  if (!a.histogram.empty()) {
    std::string csv = "bin_lower,count\n";
    for (const HistogramBin& bin : r.histogram) {
      csv += format_double(bin.lower, "%.10g") + "," + std::to_string(bin.count) + "\n";
    }
    write_file(a.histogram, csv);
  }
  if (a.output.empty()) {
    out << doc;
  } else {
    write_file(a.output, doc);
    out << "n=" << r.n << " T=" << r.length << " b=" << r.b.str()
        << " L=" << format_double(r.L_observed, "%.6g") << " df=" << r.df
        << " p_asymptotic=" << format_double(r.p_asymptotic, "%.6g")
        << " p_exact=" << format_double(r.p_exact, "%.6g") << '\n';
  }
  return kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const std::vector<Family> families = families_from(a.families);
  const MoveSet moves = MoveSet::from_families(a.length, families);
  const SweepResult sweep_result =
      sweep(a.length, a.n_max, moves, FiberBudget{a.max_elements, a.max_nodes});

  bool all_match = true;
  Json fibers = Json::array();
  Json disconnected = Json::array();
  for (const FiberSummary& s : sweep_result.fibers) {
    all_match = all_match && s.components_match_initial_classes;
    Json f;
    f["T"] = a.length;
    f["b"] = stat_json(s.b);
    f["n"] = s.b.total() / (a.length - 1);
    f["fiber_size"] = s.fiber_size;
    f["components"] = s.report.component_count;
    f["component_sizes"] = s.report.component_sizes;
    f["move_set"] = s.report.move_set;
    f["initial_classes"] = s.initial_classes;
    f["components_match_initial_classes"] = s.components_match_initial_classes;
    if (s.report.component_count > 1) {
      Json reps = Json::array();
      for (const PathTable& t : s.report.representatives) reps.push_back(t.str());
      f["representatives"] = std::move(reps);
      disconnected.push_back(s.b.str());
      out << "disconnected b=" << s.b.str() << " size=" << s.fiber_size
          << " components=" << s.report.component_count << '\n';
    }
    fibers.push_back(std::move(f));
  }
  out << "T=" << a.length << " n_max=" << a.n_max << " moves=" << moves.moves().size()
      << " fibers=" << sweep_result.fibers.size() << " connected=" << sweep_result.connected()
      << " disconnected=" << sweep_result.disconnected << '\n';

  if (!a.report.empty()) {
    Json flags;
    flags["T"] = a.length;
    flags["n_max"] = a.n_max;
    flags["families"] = a.families;
    flags["report"] = a.report;
    flags["max_elements"] = a.max_elements;
    flags["max_nodes"] = a.max_nodes;
    Json j;
    j["T"] = a.length;
    j["n_max"] = a.n_max;
    j["move_set"] = sweep_result.move_set;
    j["move_count"] = moves.moves().size();
    j["fibers_checked"] = sweep_result.fibers.size();
    j["connected"] = sweep_result.connected();
    j["disconnected"] = sweep_result.disconnected;
    j["all_components_match_initial_classes"] = all_match;
    j["disconnected_fibers"] = std::move(disconnected);
    j["fibers"] = std::move(fibers);
    j["provenance"] = provenance("verify-basis", std::move(flags));
    write_file(a.report, dump_json(j));
  }
  return sweep_result.disconnected == 0 ? kOk : kDisconnected;
}

int cmd_fiber(const FiberArgs& a, std::ostream& out, std::ostream& err) {
  const SymbolMap map = SymbolMap::parse(a.map);
  const TransitionStat b = parse_transition_stat(a.b);
  const Fiber fiber = enumerate_fiber(a.length, b, FiberBudget{a.max_elements, a.max_nodes});
  if (fiber.elements.empty()) {
    err << "fiber of b=" << b.str() << " at T=" << a.length << " is empty\n";
    return kOk;
  }
  for (const PathTable& t : fiber.elements) out << render_table(t, map) << '\n';
  return kOk;
}

int cmd_moves(const MovesArgs& a, std::ostream& out) {
  const std::vector<Family> families = families_from(a.families);
  for (const Move& m : enumerate_moves(a.length, families)) out << m.str() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov bases and exact tests for two-state toric homogeneous Markov chains", "thmc"};
  app.set_version_flag("--version", std::string("thmc ") + kToolVersion);
  app.require_subcommand(1);

  TestArgs test;
  auto* test_cmd = app.add_subcommand("test", "Likelihood-ratio test with asymptotic and MCMC exact p-values");
  test_cmd->add_option("--input", test.input, "CSV file of path,count lines")->required();
  test_cmd->add_option("--map", test.map, "Symbol mapping, e.g. M=1,F=2")->capture_default_str();
  test_cmd->add_option("--samples", test.samples, "Post burn-in samples per chain")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  test_cmd->add_option("--burnin", test.burnin, "Burn-in steps per chain")->capture_default_str();
  test_cmd->add_option("--seed", test.seed, "Random seed")->capture_default_str();
  test_cmd->add_option("--output", test.output, "Write the result JSON here instead of stdout");
  test_cmd->add_option("--histogram", test.histogram, "Write the L histogram CSV here");
  test_cmd->add_option("--weights", test.weights,
                       "Proposal family weights: name=w,... or six numbers");
  test_cmd->add_flag("--add-observed", test.add_observed, "Use (1 + hits) / (N + 1)");
  test_cmd->add_option("--chains", test.chains, "Independent chains run in parallel")
      ->check(CLI::Range(1U, 256U))
      ->capture_default_str();
  test_cmd->add_option("--bin-width", test.bin_width, "Histogram bin width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  VerifyArgs verify;
  auto* verify_cmd =
      app.add_subcommand("verify-basis", "Check that a move set connects every small fiber");
  verify_cmd->add_option("--T", verify.length, "Path length")->required()->check(CLI::Range(3, 6));
  verify_cmd->add_option("--n-max", verify.n_max, "Largest total count")
      ->required()
      ->check(CLI::Range(1, 1000));
  verify_cmd->add_option("--families", verify.families, "Comma list of families or 'all'")
      ->capture_default_str();
  verify_cmd->add_option("--report", verify.report, "Write a JSON report here");
  verify_cmd->add_option("--max-elements", verify.max_elements, "Fiber size budget")
      ->capture_default_str();
  verify_cmd->add_option("--max-nodes", verify.max_nodes, "Search node budget")->capture_default_str();

  FiberArgs fiber;
  auto* fiber_cmd = app.add_subcommand("enumerate-fiber", "List every table with the given b");
  fiber_cmd->add_option("--T", fiber.length, "Path length")->required()->check(CLI::Range(3, 24));
  fiber_cmd->add_option("--b", fiber.b, "b11,b12,b21,b22")->required();
  fiber_cmd->add_option("--map", fiber.map, "Symbol mapping for the output")->capture_default_str();
  fiber_cmd->add_option("--max-elements", fiber.max_elements, "Fiber size budget")
      ->capture_default_str();
  fiber_cmd->add_option("--max-nodes", fiber.max_nodes, "Search node budget")->capture_default_str();

  MovesArgs moves;
  auto* moves_cmd = app.add_subcommand("moves", "List the moves of some families");
  moves_cmd->add_option("action", moves.action, "enumerate")
      ->check(CLI::IsMember({"enumerate"}))
      ->capture_default_str();
  moves_cmd->add_option("--T", moves.length, "Path length")
      ->required()
      ->check(CLI::Range(3, kDefaultEnumerationCap));
  moves_cmd->add_option("--family,--families", moves.families, "Comma list of families or 'all'")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*test_cmd) return cmd_test(test, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*fiber_cmd) return cmd_fiber(fiber, out, err);
    if (*moves_cmd) return cmd_moves(moves, out);
  } catch (const IngestError& e) {
    err << "input error: " << e.what() << '\n';
    return kIngest;
  } catch (const FitFailure& e) {
    err << "fit failure: " << e.what() << '\n';
    return kFitFailure;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace thmc::cli
