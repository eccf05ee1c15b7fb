#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "thmc/commands.hpp"
#include "thmc/dataset.hpp"
#include "thmc/enumerate.hpp"
#include "thmc/fiber.hpp"
#include "thmc/mcmc.hpp"
#include "thmc/stats.hpp"

namespace py = pybind11;
using namespace thmc;

namespace {

using TableDict = std::map<std::string, Count>;

// Keys are state strings such as "1121"; they must share one length.
PathTable to_table(const TableDict& d) {
  if (d.empty()) throw InvalidArgument("table must have at least one path");
  std::vector<PathTable::Entry> entries;
  const int length = static_cast<int>(d.begin()->first.size());
  for (const auto& [s, c] : d) entries.emplace_back(Path::parse(s), c);
  return PathTable(length, entries);
}

TableDict to_dict(const PathTable& t) {
  TableDict d;
  for (const auto& [p, c] : t) d[p.str()] = c;
  return d;
}

py::tuple stat_tuple(const TransitionStat& b) { return py::make_tuple(b.b11, b.b12, b.b21, b.b22); }

TransitionStat to_stat(const std::array<Count, 4>& b) { return {b[0], b[1], b[2], b[3]}; }

Variant to_variant(const std::string& name) {
  if (name == "without" || name == "without_initial") return Variant::WithoutInitial;
  if (name == "with" || name == "with_initial") return Variant::WithInitial;
  throw InvalidArgument("variant must be 'without' or 'with'");
}

std::vector<Family> to_families(const std::optional<std::vector<std::string>>& names) {
  if (!names) return {kAllFamilies.begin(), kAllFamilies.end()};
  std::vector<Family> out;
  for (const auto& n : *names) out.push_back(parse_family(n));
  return out;
}

}  // namespace

PYBIND11_MODULE(_thmc, m) {
  m.doc() = "Markov bases and exact tests for two-state toric homogeneous Markov chains";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<IngestError>(m, "IngestError", base.ptr());
  py::register_exception<FitFailure>(m, "FitFailure", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

  m.def("suff_stat", [](const TableDict& t) { return stat_tuple(suff_stat(to_table(t))); },
        py::arg("table"), "Transition counts (b11, b12, b21, b22).");
  m.def("initial_freq",
        [](const TableDict& t) {
          const InitialFreq f = initial_freq(to_table(t));
          return py::make_tuple(f.state1, f.state2);
        },
        py::arg("table"));

  m.def("enumerate_fiber",
        [](int T, const std::array<Count, 4>& b) {
          std::vector<TableDict> out;
          for (const PathTable& t : enumerate_fiber(T, to_stat(b)).elements) out.push_back(to_dict(t));
          return out;
        },
        py::arg("T"), py::arg("b"), "Every table with the given transition counts.");

  m.def("enumerate_moves",
        [](int T, const std::optional<std::vector<std::string>>& families) {
          py::list out;
          for (const Move& mv : enumerate_moves(T, to_families(families))) {
            TableDict d;
            for (const auto& [p, c] : mv.deltas()) d[p.str()] = c;
            out.append(py::make_tuple(std::string(family_name(mv.family())), d));
          }
          return out;
        },
        py::arg("T"), py::arg("families") = py::none(), "(family, {path: delta}) for each move.");

  m.def("fit_mle",
        [](const TableDict& t, const std::string& variant) {
          const FittedModel f = fit_mle(to_table(t), to_variant(variant));
          py::dict d;
          d["theta"] = f.theta;
          d["probs"] = f.probs;
          d["residual"] = f.residual;
          d["boundary"] = f.boundary;
          d["iterations"] = f.iterations;
          return d;
        },
        py::arg("table"), py::arg("variant") = "without");

  m.def("likelihood_ratio", [](const TableDict& t) { return likelihood_ratio(to_table(t)); },
        py::arg("table"));
  m.def("lr_df", &lr_df, py::arg("T"));
  m.def("chi2_sf", &chi2_sf, py::arg("x"), py::arg("df"));

  m.def("exact_test",
        [](const TableDict& t, std::uint64_t samples, std::uint64_t burnin, std::uint64_t seed,
           const std::optional<std::string>& weights, bool add_observed, unsigned chains) {
          ExactTestOptions o;
          o.steps = samples;
          o.burnin = burnin;
          o.seed = seed;
          o.add_observed = add_observed;
          o.chains = chains;
          if (weights) o.weights = FamilyWeights::parse(*weights);
          TestResult r;
          {
            py::gil_scoped_release release;
            r = exact_test(to_table(t), o);
          }
          py::dict d;
          d["n"] = r.n;
          d["T"] = r.length;
          d["b"] = stat_tuple(r.b);
          d["L"] = r.L_observed;
          d["df"] = r.df;
          d["p_asymptotic"] = r.p_asymptotic;
          d["p_exact"] = r.p_exact;
          d["samples"] = r.samples;
          d["burnin"] = r.burnin;
          d["seed"] = r.seed;
          d["acceptance_rate"] = r.acceptance_rate;
          d["null_proposal_rate"] = r.null_proposal_rate;
          py::list hist;
          for (const HistogramBin& bin : r.histogram) hist.append(py::make_tuple(bin.lower, bin.count));
          d["histogram"] = hist;
          return d;
        },
        py::arg("table"), py::arg("samples") = 10'000, py::arg("burnin") = 5'000,
        py::arg("seed") = 1, py::arg("weights") = py::none(), py::arg("add_observed") = false,
        py::arg("chains") = 1);

  m.def("verify_basis",
        [](int T, int n_max, const std::optional<std::vector<std::string>>& families) {
          const MoveSet moves = MoveSet::from_families(T, to_families(families));
          const SweepResult s = sweep(T, n_max, moves);
          py::list disconnected;
          for (const FiberSummary& f : s.fibers) {
            if (f.report.component_count > 1) disconnected.append(stat_tuple(f.b));
          }
          py::dict d;
          d["fibers"] = s.fibers.size();
          d["connected"] = s.connected();
          d["disconnected"] = disconnected;
          d["move_count"] = moves.moves().size();
          return d;
        },
        py::arg("T"), py::arg("n_max"), py::arg("families") = py::none());

  m.def("read_csv",
        [](const std::string& path, const std::string& map) {
          return to_dict(ingest(path, SymbolMap::parse(map)).table);
        },
        py::arg("path"), py::arg("map") = "1=1,2=2");

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in-process: (exit code, stdout, stderr).");
}
