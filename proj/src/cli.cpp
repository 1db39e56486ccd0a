#include "hvm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "hvm/consistency.hpp"
#include "hvm/experiments.hpp"
#include "hvm/json_io.hpp"

namespace hvm::cli {

namespace {

struct Options {
  std::uint64_t seed = 0;
  std::size_t trials = 0;  // 0: subcommand default
  double theta = std::numbers::pi / 3.0;
  std::string format = "text";
  double tolerance_sigma = 5.0;
  std::string out;
  unsigned threads = 0;
  double c = 0.4;
  std::size_t index = 3;
  std::string kind = "column";
  std::string variant = "product";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt_value(double v) {
  std::ostringstream os;
  os << std::showpos << std::setprecision(6) << v;
  return os.str();
}

std::string fmt_state(const PureState& s) {
  std::ostringstream os;
  os << std::setprecision(6) << '(';
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (i) os << ", ";
    const cplx z = s[i];
    if (z.imag() == 0.0) {
      os << z.real();
    } else {
      os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << 'i';
    }
  }
  os << ')';
  return os.str();
}

std::size_t trials_or(const Options& o, std::size_t fallback) { return o.trials ? o.trials : fallback; }

LineKind parse_kind(const std::string& kind) {
  return kind == "row" ? LineKind::kRow : LineKind::kColumn;
}

ObservableExpression line_expression(const PeresMerminSquare& sq, const Options& o) {
  const std::size_t k = o.index - 1;
  return parse_kind(o.kind) == LineKind::kRow ? sq.row_expression(k) : sq.column_expression(k);
}

void require_format(const Options& o, std::initializer_list<const char*> allowed, const char* command) {
  for (const char* f : allowed) {
    if (o.format == f) return;
  }
  throw UsageError(std::string("format '") + o.format + "' is not supported by " + command);
}

ExperimentConfig config_from(const Options& o, std::size_t default_trials) {
  ExperimentConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = trials_or(o, default_trials);
  cfg.theta = o.theta;
  cfg.tolerance_sigma = o.tolerance_sigma;
  cfg.threads = o.threads;
  cfg.record_trials = o.format == "csv";
  return cfg;
}

// ---------------------------------------------------------------------------
// Subcommands. Each writes its report and returns the exit code.

int cmd_table1(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json", "csv"}, "table1");
  const Table1Replay replay = replay_table1();
  if (o.format == "json") {
    out << to_json(replay).dump(2) << '\n';
  } else if (o.format == "csv") {
    std::vector<TrialOutcome> rows;
    for (const auto& rec : replay.trace.records) rows.push_back({rows.size() + 1, rec.observable_label, rec.c_used, rec.value});
    write_csv(out, rows);
  } else {
    constexpr int kWidth = 42;
    auto columns = [&](const std::function<std::string(const Table1Iteration&)>& cell) {
      for (const auto& it : replay.iterations) out << std::left << std::setw(kWidth) << cell(it);
      out << '\n';
    };
    columns([](const Table1Iteration& it) {
      std::ostringstream os;
      os << "i=" << it.index << ": c=" << it.c;
      return os.str();
    });
    columns([](const Table1Iteration& it) { return "psi_init = " + fmt_state(it.initial_state); });
    for (std::size_t r = 0; r < 3; ++r) {
      columns([r](const Table1Iteration& it) {
        std::string row = r == 1 ? "M(A_ij) = [ " : "          [ ";
        for (double v : it.grid[r]) row += (v > 0 ? "+1 " : "-1 ");
        return row + "]";
      });
    }
    columns([](const Table1Iteration& it) {
      std::string s = "M(R_i) =";
      for (double v : it.row_values) s += " " + fmt_value(v);
      return s;
    });
    columns([](const Table1Iteration& it) {
      std::string s = "M(C_j) =";
      for (double v : it.column_values) s += " " + fmt_value(v);
      return s;
    });
    columns([](const Table1Iteration& it) {
      return "measure " + it.measured_label + ": " + fmt_value(it.measured_value);
    });
    columns([](const Table1Iteration& it) { return "psi_final = " + fmt_state(it.final_state); });
    out << (replay.pass() ? "table1: all values match\n" : "table1: MISMATCH at " + *replay.first_mismatch + "\n");
  }
  return replay.pass() ? kExitPass : kExitAssertion;
}

int cmd_born(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = config_from(o, 100000);
  const StatReport report = born_experiment(cfg, spin_half_state(o.theta), pauli(PauliAxis::Z));
  if (o.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else if (o.format == "csv") {
    write_csv(out, report.per_trial);
  } else {
    out << "state cos(theta)|0> + sin(theta)|1>, theta = " << std::setprecision(12) << o.theta
        << ", observable Z, trials = " << report.trials << '\n';
    out << std::setprecision(6);
    for (std::size_t k = 0; k < report.eigenvalues.size(); ++k) {
      out << "  value " << fmt_value(report.eigenvalues[k]) << ": frequency " << report.outcome_frequencies[k]
          << ", Born probability " << report.expected_probabilities[k] << '\n';
    }
    out << "max deviation " << report.max_sigma_deviation << " sigma (limit " << report.tolerance_sigma
        << "): " << (report.pass ? "pass" : "FAIL") << '\n';
  }
  return report.pass ? kExitPass : kExitAssertion;
}

int cmd_pm_square(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"}, "pm-square");
  const PeresMerminSquare sq = peres_mermin();
  if (o.format == "json") {
    out << to_json(sq).dump(2) << '\n';
    return kExitPass;
  }
  const char* names[3][3] = {{"I(x)X", "X(x)I", "X(x)X"}, {"Y(x)I", "I(x)Y", "Y(x)Y"}, {"Y(x)X", "X(x)Y", "Z(x)Z"}};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) out << sq.cell(r, c).label() << " = " << std::left << std::setw(8) << names[r][c];
    out << "| R" << r + 1 << " = " << fmt_value(*scalar_multiple_of_identity(sq.row_product(r))) << " I\n";
  }
  for (std::size_t c = 0; c < 3; ++c) {
    out << "C" << c + 1 << " = " << fmt_value(*scalar_multiple_of_identity(sq.column_product(c))) << " I   ";
  }
  out << "\nrow and column triples commute; products verified\n";
  return kExitPass;
}

int cmd_no_go(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"}, "no-go");
  const NoGoResult result = no_go_search(peres_mermin());
  if (o.format == "json") {
    out << to_json(result).dump(2) << '\n';
  } else {
    out << "total_assignments: " << result.total_assignments << '\n'
        << "satisfying_assignments: " << result.satisfying_assignments << '\n'
        << "row_satisfying: " << result.row_satisfying << " (all with an even number of -1: "
        << result.parity_even_count << ")\n"
        << "column_satisfying: " << result.column_satisfying << " (all with an odd number of -1: "
        << result.parity_odd_count << ")\n";
  }
  return result.satisfying_assignments == 0 ? kExitPass : kExitAssertion;
}

int cmd_weak_fc(const Options& o, std::ostream& out) {
  const PeresMerminSquare sq = peres_mermin();
  const ObservableExpression f = line_expression(sq, o);
  const PureState start = basis_ket(4, 0);
  const bool csv = o.format == "csv";
  const WeakFcSweep sweep = weak_fc_sweep(f, start, trials_or(o, 1000), o.seed, csv, o.threads);

  // Injected example: last leaf first, c = 0.4, 0.1, 0.7.
  const ConsistencyReport example =
      check_weak_fc(f, HiddenState(start, 0.4), {2, 1, 0}, scripted_draw({0.1, 0.7}));

  if (o.format == "json") {
    Json j;
    j["sweep"] = to_json(sweep);
    j["injected_example"] = to_json(example);
    out << j.dump(2) << '\n';
  } else if (csv) {
    std::vector<TrialOutcome> rows;
    for (std::size_t r = 0; r < sweep.reports.size(); ++r) {
      const auto& rep = sweep.reports[r];
      std::string order;
      for (const auto& step : rep.details) order += (order.empty() ? "" : ">") + step.label;
      for (const auto& step : rep.details) rows.push_back({r / sweep.permutations, order, step.c, step.value});
    }
    write_csv(out, rows);
  } else {
    out << f.label() << " from |00>: " << sweep.trials << " seeds x " << sweep.permutations
        << " orderings, " << sweep.passes << " hold, " << sweep.failures << " fail\n";
    out << "injected example (c = 0.4, 0.1, 0.7):";
    for (const auto& step : example.details) out << ' ' << step.label << '=' << fmt_value(step.value);
    out << "  lhs " << fmt_value(example.lhs_value) << " rhs " << fmt_value(example.rhs_value) << '\n';
  }
  return sweep.failures == 0 && example.holds ? kExitPass : kExitAssertion;
}

int cmd_strong_fc(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"}, "strong-fc");
  const PeresMerminSquare sq = peres_mermin();
  const ObservableExpression f = line_expression(sq, o);
  const ConsistencyReport report = check_strong_fc(f, HiddenState(basis_ket(4, 0), o.c));
  if (o.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << "state |00>, c = " << o.c << '\n';
    for (const auto& step : report.details) out << "  M(" << step.label << ") = " << fmt_value(step.value) << '\n';
    out << "M(" << f.label() << ") = " << fmt_value(report.lhs_value) << ", product of leaf values = "
        << fmt_value(report.rhs_value) << ": "
        << (report.holds ? "functionally consistent here" : "not functionally consistent") << '\n';
  }
  return kExitPass;
}

int cmd_implications(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"}, "implications");
  const ImplicationsReport report = implications_demo(o.c);
  if (o.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << "state (|10> + |01>)/sqrt2, c = " << o.c << '\n'
        << "direct:  M(B1) = " << fmt_value(report.direct_b1) << ", M(B2) = " << fmt_value(report.direct_b2)
        << ", M(C) = " << fmt_value(report.direct_c) << '\n'
        << "deduced from C: B1 = " << fmt_value(report.deduced_b1) << ", B2 = " << fmt_value(report.deduced_b2)
        << (report.non_fc ? "  (differs from direct assignment)" : "") << '\n'
        << "after measuring C: values of B1, B2 "
        << (report.post_collapse_consistent ? "equal the deduced ones for every c" : "DISAGREE with the deduction")
        << '\n';
  }
  return report.post_collapse_consistent ? kExitPass : kExitAssertion;
}

int cmd_chsh(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = config_from(o, 100000);
  const ChshVariant variant = o.variant == "sequential" ? ChshVariant::kSequential : ChshVariant::kProductObservable;
  const ChshReport report = chsh_experiment(cfg, variant);
  if (o.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else if (o.format == "csv") {
    write_csv(out, report.per_trial);
  } else {
    out << std::setprecision(6);
    for (const auto& corr : report.correlators) out << "E(" << corr.label << ") = " << fmt_value(corr.expectation) << '\n';
    out << "S = " << report.s_value << " +/- " << report.standard_error << " (2 sqrt2 = "
        << 2.0 * std::numbers::sqrt2 << "): " << (report.pass ? "pass" : "FAIL") << '\n';
  }
  return report.pass ? kExitPass : kExitAssertion;
}

int cmd_column_product(const Options& o, std::ostream& out) {
  require_format(o, {"text", "json"}, "column-product");
  const ColumnProductReport report =
      column_product_experiment(peres_mermin(), o.index, trials_or(o, 1000), o.seed, parse_kind(o.kind), o.threads);
  if (o.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << (report.kind == LineKind::kRow ? "row " : "column ") << report.index << ": forced product "
        << fmt_value(report.expected_product) << ", " << report.passes << " of "
        << report.trials * report.permutations << " sequential runs agree, " << report.failures << " fail\n";
  }
  return report.failures == 0 ? kExitPass : kExitAssertion;
}

constexpr const char* kCsvHelp =
    "CSV output (born, chsh, table1, weak-fc) has columns trial,setting,c,value: "
    "trial index, setting or observable label, hidden variable c, assigned value.";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-contextual hidden-variable model: prediction map, collapse, consistency checks"};
  app.footer(kCsvHelp);
  app.require_subcommand(1, 1);

  Options o;
  std::map<std::string, std::function<int(const Options&, std::ostream&)>> handlers;

  auto add = [&](const std::string& name, const std::string& description,
                 std::function<int(const Options&, std::ostream&)> handler) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--seed", o.seed, "RNG seed (all randomness derives from it)")->capture_default_str();
    sub->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber);
    sub->add_option("--theta", o.theta, "Spin-half angle in radians (born)")->capture_default_str();
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--tolerance-sigma", o.tolerance_sigma, "Statistical tolerance in standard errors")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--out", o.out, "Write the report to this file instead of stdout");
    sub->add_option("--threads", o.threads, "Worker threads (0: all cores); output does not depend on it");
    handlers[name] = std::move(handler);
    return sub;
  };

  auto open_unit = CLI::Validator(
      [](std::string& s) -> std::string {
        double v = 0.0;
        try {
          v = std::stod(s);
        } catch (const std::exception&) {
          return "not a number: " + s;
        }
        return v > 0.0 && v < 1.0 ? std::string() : std::string("c must lie in (0, 1)");
      },
      "(0,1)");
  auto line_options = [&](CLI::App* sub) {
    sub->add_option("--index", o.index, "Row/column index")->check(CLI::Range(1, 3))->capture_default_str();
    sub->add_option("--kind", o.kind, "Line kind")->check(CLI::IsMember({"row", "column"}))->capture_default_str();
  };

  add("table1", "Replay the three-iteration Peres-Mermin trace with c = 0.4, 0.1, 0.7", cmd_table1);
  add("born", "Born-rule statistics for cos(theta)|0> + sin(theta)|1> measured in Z", cmd_born);
  add("pm-square", "Build the Peres-Mermin square and check its operator identities", cmd_pm_square);
  add("no-go", "Exhaustive search over all 512 +/-1 assignments of the square", cmd_no_go);
  line_options(add("weak-fc", "Weak functional consistency over seeds and all orderings", cmd_weak_fc));
  auto* strong = add("strong-fc", "Functional consistency at one hidden state from |00>", cmd_strong_fc);
  line_options(strong);
  strong->add_option("--c", o.c, "Hidden variable")->check(open_unit)->capture_default_str();
  add("implications", "Deduce B1, B2 from a C outcome and compare with direct values", cmd_implications)
      ->add_option("--c", o.c, "Hidden variable")
      ->check(open_unit)
      ->capture_default_str();
  add("chsh", "CHSH correlators on the Bell state", cmd_chsh)
      ->add_option("--variant", o.variant, "product: measure A(x)B; sequential: A(x)I then I(x)B")
      ->check(CLI::IsMember({"product", "sequential"}))
      ->capture_default_str();
  line_options(add("column-product", "Sequential products along a row or column from random states",
                   cmd_column_product));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    std::ostringstream report;
    const int code = handlers.at(name)(o, report);
    if (o.out.empty()) {
      out << report.str();
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) {
        err << "cannot open " << o.out << " for writing\n";
        return kExitUsage;
      }
      file << report.str();
    }
    return code;
  } catch (const UsageError& e) {
    err << name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << name << ": " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitAssertion;
  }
}

}  // namespace hvm::cli
