#include "hvm/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hvm/random.hpp"
#include "parallel.hpp"

namespace hvm {

void ExperimentConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (!(tolerance_sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance_sigma must be > 0");
  if (!std::isfinite(theta)) throw Error(ErrorCode::kInvalidArgument, "theta must be finite");
}

PureState spin_half_state(double theta) {
  ComplexVector v(2);
  v << std::cos(theta), std::sin(theta);
  return PureState::normalized(v);
}

// ---------------------------------------------------------------------------
// Born statistics

namespace {

double sigma_deviation(double freq, double p, std::size_t n) {
  const double var = p * (1.0 - p);
  if (var <= 0.0) {
    return std::abs(freq - p) <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(freq - p) / std::sqrt(var / static_cast<double>(n));
}

}  // namespace

StatReport born_experiment(const ExperimentConfig& cfg, const PureState& state,
                           const HermitianOperator& obs) {
  cfg.validate();
  const SpectralDecomposition& spec = obs.spectrum();
  if (spec.dim() != state.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "observable and state dimensions differ");
  }

  std::vector<std::size_t> branch(cfg.trials);
  std::vector<double> cs(cfg.trials);
  detail::parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    Rng rng = Rng::substream(cfg.seed, t);
    cs[t] = draw_hidden(rng);
    branch[t] = predict_branch(spec, HiddenState(state, cs[t]));
  });

  StatReport report;
  report.trials = cfg.trials;
  report.tolerance_sigma = cfg.tolerance_sigma;
  report.expected_probabilities = branch_probabilities(spec, state);
  std::vector<std::size_t> counts(spec.size(), 0);
  for (std::size_t b : branch) ++counts[b];
  for (std::size_t k = 0; k < spec.size(); ++k) {
    report.eigenvalues.push_back(spec.branches()[k].eigenvalue);
    const double freq = static_cast<double>(counts[k]) / static_cast<double>(cfg.trials);
    report.outcome_frequencies.push_back(freq);
    report.max_sigma_deviation = std::max(
        report.max_sigma_deviation, sigma_deviation(freq, report.expected_probabilities[k], cfg.trials));
  }
  report.pass = report.max_sigma_deviation <= cfg.tolerance_sigma;
  if (cfg.record_trials) {
    const std::string setting = obs.label().empty() ? "obs" : obs.label();
    report.per_trial.reserve(cfg.trials);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      report.per_trial.push_back({t, setting, cs[t], spec.branches()[branch[t]].eigenvalue});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Three-iteration trace

const Table1Expected& table1_expected() {
  static const Table1Expected expected = [] {
    const double r = 1.0 / std::numbers::sqrt2;
    ComplexVector bell(4);
    bell << r, 0.0, 0.0, r;
    const std::array<std::array<double, 3>, 3> early{{{-1, -1, -1}, {-1, -1, -1}, {-1, -1, +1}}};
    const std::array<std::array<double, 3>, 3> late{{{+1, +1, +1}, {+1, +1, -1}, {+1, +1, +1}}};
    return Table1Expected{
        {0.4, 0.1, 0.7},
        {early, early, late},
        {+1, +1, +1},
        {+1, +1, -1},
        {{{2, 2}, {1, 2}, {0, 2}}},
        {+1, -1, +1},
        {basis_ket(4, 0), PureState(bell), PureState(bell)},
    };
  }();
  return expected;
}

namespace {

bool same_value(double a, double b) { return std::abs(a - b) <= kValueEqualityTol; }

std::string cell_name(int iteration, const std::string& what) {
  std::ostringstream os;
  os << "iteration " << iteration << ": " << what;
  return os.str();
}

}  // namespace

Table1Replay replay_table1() {
  const Table1Expected& ref = table1_expected();
  const PeresMerminSquare square = peres_mermin();

  Table1Replay replay;
  PureState state = basis_ket(4, 0);
  auto mismatch = [&](std::string where) {
    if (!replay.first_mismatch) replay.first_mismatch = std::move(where);
  };

  for (int i = 0; i < 3; ++i) {
    const HiddenState hs(state, ref.c[i]);
    Table1Iteration it{i + 1, ref.c[i], state, {}, {}, {}, {}, 0.0, state};
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t col = 0; col < 3; ++col) {
        it.grid[r][col] = predict(square.cell(r, col), hs);
        if (!same_value(it.grid[r][col], ref.grids[i][r][col])) {
          mismatch(cell_name(i + 1, "M(" + square.cell(r, col).label() + ")"));
        }
      }
    }
    for (std::size_t k = 0; k < 3; ++k) {
      it.row_values[k] = predict(square.row_product(k), hs);
      it.column_values[k] = predict(square.column_product(k), hs);
      if (!same_value(it.row_values[k], ref.row_values[k])) {
        mismatch(cell_name(i + 1, "M(R" + std::to_string(k + 1) + ")"));
      }
      if (!same_value(it.column_values[k], ref.column_values[k])) {
        mismatch(cell_name(i + 1, "M(C" + std::to_string(k + 1) + ")"));
      }
    }

    const auto [mr, mc] = ref.measured_cells[i];
    const HermitianOperator& measured = square.cell(mr, mc);
    const double value = predict(measured, hs);
    PureState post = update(measured.spectrum(), state, value);
    it.measured_label = measured.label();
    it.measured_value = value;
    it.final_state = post;
    if (!same_value(value, ref.measured_values[i])) {
      mismatch(cell_name(i + 1, "measured " + measured.label()));
    }
    if (!post.equal_up_to_phase(ref.final_states[i], 1e-9)) {
      mismatch(cell_name(i + 1, "final state"));
    }
    replay.trace.records.push_back({measured.label(), ref.c[i], value, state, post});
    replay.iterations.push_back(std::move(it));
    state = std::move(post);
  }
  return replay;
}

// ---------------------------------------------------------------------------
// Implications

ImplicationsReport implications_demo(double c) {
  const double r = 1.0 / std::numbers::sqrt2;
  ComplexVector v(4);
  v << 0.0, r, r, 0.0;
  return implications_demo(c, PureState(v));
}

ImplicationsReport implications_demo(double c, const PureState& state) {
  const ImplicationsOperators ops = implications_operators();
  const HiddenState hs(state, c);

  const double direct_b1 = predict(ops.b1, hs);
  const double direct_b2 = predict(ops.b2, hs);
  const double direct_c = predict(ops.c, hs);
  PureState collapsed = update(ops.c.spectrum(), state, direct_c);

  // The collapsed state is a common eigenket of B1 and B2.
  auto eigenvalue_on = [&collapsed](const HermitianOperator& op) {
    const ComplexVector image = op.matrix() * collapsed.vector();
    const cplx lambda = collapsed.vector().dot(image);
    if ((image - lambda * collapsed.vector()).norm() > 1e-9) {
      throw Error(ErrorCode::kPreconditionViolated, op.label() + " has no definite value after C");
    }
    return lambda.real();
  };
  const double deduced_b1 = eigenvalue_on(ops.b1);
  const double deduced_b2 = eigenvalue_on(ops.b2);

  ImplicationsReport report{c, state, direct_b1, direct_b2, direct_c, collapsed,
                            deduced_b1, deduced_b2, false, false, false,
                            1.0, 1.0, 1.0, false, {}, false};
  report.mismatch_b1 = !same_value(direct_b1, deduced_b1);
  report.mismatch_b2 = !same_value(direct_b2, deduced_b2);
  report.non_fc = report.mismatch_b1 || report.mismatch_b2;
  report.matches_printed = same_value(direct_b1, report.printed_b1) &&
                           same_value(direct_b2, report.printed_b2) &&
                           same_value(direct_c, report.printed_c);

  report.post_collapse_consistent = true;
  std::vector<double> grid{1e-9};
  for (int k = 1; k < 100; ++k) grid.push_back(k / 100.0);
  grid.push_back(1.0 - 1e-9);
  for (double c2 : grid) {
    const HiddenState after(collapsed, c2);
    const ImplicationsCheck check{c2, predict(ops.b1, after), predict(ops.b2, after)};
    report.post_collapse_consistent = report.post_collapse_consistent &&
                                      same_value(check.b1, deduced_b1) &&
                                      same_value(check.b2, deduced_b2);
    report.post_collapse.push_back(check);
  }
  return report;
}

// ---------------------------------------------------------------------------
// CHSH

namespace {

struct ChshSetting {
  std::string label;
  HermitianOperator alice;
  HermitianOperator bob;
};

std::array<ChshSetting, 4> chsh_settings() {
  const double r = 1.0 / std::numbers::sqrt2;
  const HermitianOperator z = pauli(PauliAxis::Z);
  const HermitianOperator x = pauli(PauliAxis::X);
  const HermitianOperator b(r * (z.matrix() + x.matrix()), "B");
  const HermitianOperator bp(r * (z.matrix() - x.matrix()), "B'");
  const HermitianOperator a = z.with_label("A");
  const HermitianOperator ap = x.with_label("A'");
  return {ChshSetting{"AB", a, b}, ChshSetting{"AB'", a, bp}, ChshSetting{"A'B", ap, b},
          ChshSetting{"A'B'", ap, bp}};
}

}  // namespace

ChshReport chsh_experiment(const ExperimentConfig& cfg, ChshVariant variant) {
  cfg.validate();
  const double r = 1.0 / std::numbers::sqrt2;
  ComplexVector bell_vec(4);
  bell_vec << r, 0.0, 0.0, r;
  const PureState bell(bell_vec);
  const HermitianOperator id = identity(2);

  ChshReport report;
  report.variant = variant;
  report.trials_per_setting = cfg.trials;
  report.tolerance_sigma = cfg.tolerance_sigma;

  const auto settings = chsh_settings();
  const std::size_t n = cfg.trials;
  std::vector<double> outcome(4 * n);
  std::vector<double> first_c(4 * n);

  for (std::size_t s = 0; s < 4; ++s) {
    const auto& setting = settings[s];
    const HermitianOperator joint = tensor(setting.alice, setting.bob).with_label(setting.label);
    const HermitianOperator alice_local = tensor(setting.alice, id).with_label(setting.alice.label() + "I");
    const HermitianOperator bob_local = tensor(id, setting.bob).with_label("I" + setting.bob.label());
    // Force the lazy decompositions before fanning out.
    (void)joint.spectrum();
    (void)alice_local.spectrum();
    (void)bob_local.spectrum();

    detail::parallel_for(n, cfg.threads, [&](std::size_t t) {
      const std::size_t slot = s * n + t;
      Rng rng = Rng::substream(cfg.seed, slot);
      const double c = draw_hidden(rng);
      first_c[slot] = c;
      if (variant == ChshVariant::kProductObservable) {
        outcome[slot] = predict(joint, HiddenState(bell, c));
      } else {
        const MeasureOutcome first = measure(alice_local, HiddenState(bell, c), rng);
        outcome[slot] = first.record.value * predict(bob_local, first.next);
      }
    });

    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) total += outcome[s * n + t];
    report.correlators[s] = {setting.label, total / static_cast<double>(n), n};
  }

  const auto& e = report.correlators;
  report.s_value = e[0].expectation + e[1].expectation + e[2].expectation - e[3].expectation;
  double var = 0.0;
  for (const auto& corr : e) var += (1.0 - corr.expectation * corr.expectation) / static_cast<double>(n);
  report.standard_error = std::sqrt(var);
  report.pass = report.s_value > 2.0 &&
                std::abs(report.s_value - 2.0 * std::numbers::sqrt2) <=
                    cfg.tolerance_sigma * report.standard_error;

  if (cfg.record_trials) {
    report.per_trial.reserve(4 * n);
    for (std::size_t s = 0; s < 4; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        report.per_trial.push_back({t, settings[s].label, first_c[s * n + t], outcome[s * n + t]});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Line products and weak-FC sweeps

ColumnProductReport column_product_experiment(const PeresMerminSquare& square, std::size_t index,
                                              std::size_t trials, std::uint64_t seed, LineKind kind,
                                              unsigned threads) {
  if (index < 1 || index > 3) {
    throw Error(ErrorCode::kInvalidArgument, "line index must be 1, 2 or 3");
  }
  const std::size_t k = index - 1;
  std::vector<HermitianOperator> line;
  for (std::size_t m = 0; m < 3; ++m) {
    line.push_back(kind == LineKind::kColumn ? square.cell(m, k) : square.cell(k, m));
    (void)line.back().spectrum();
  }
  const HermitianOperator& forced = kind == LineKind::kColumn ? square.column_product(k)
                                                               : square.row_product(k);
  const auto expected = scalar_multiple_of_identity(forced);
  if (!expected) throw Error(ErrorCode::kPreconditionViolated, forced.label() + " is not a multiple of I");

  const auto perms = all_permutations(3);
  std::vector<std::size_t> failures(trials, 0);
  detail::parallel_for(trials, threads, [&](std::size_t t) {
    Rng rng = Rng::substream(seed, t);
    const PureState start = random_state(4, rng);
    for (const auto& perm : perms) {
      std::vector<HermitianOperator> ordered{line[perm[0]], line[perm[1]], line[perm[2]]};
      const MeasurementTrace trace =
          measure_sequence(ordered, HiddenState(start, draw_hidden(rng)), rng_draw(rng));
      double prod = 1.0;
      for (const auto& rec : trace.records) prod *= rec.value;
      if (!same_value(prod, *expected)) ++failures[t];
    }
  });

  ColumnProductReport report{kind, index, *expected, trials, perms.size(), 0, 0};
  for (std::size_t f : failures) report.failures += f;
  report.passes = trials * perms.size() - report.failures;
  return report;
}

WeakFcSweep weak_fc_sweep(const ObservableExpression& f, const PureState& initial,
                          std::size_t trials, std::uint64_t seed, bool keep_reports,
                          unsigned threads) {
  const auto perms = all_permutations(f.leaves().size());
  (void)f.eval_operator().spectrum();
  for (const auto& l : f.leaves()) (void)l.spectrum();

  std::vector<std::vector<ConsistencyReport>> per_trial(trials);
  detail::parallel_for(trials, threads, [&](std::size_t t) {
    Rng rng = Rng::substream(seed, t);
    const HiddenState start(initial, draw_hidden(rng));
    per_trial[t].reserve(perms.size());
    for (const auto& perm : perms) per_trial[t].push_back(check_weak_fc(f, start, perm, rng));
  });

  WeakFcSweep sweep{f.label(), trials, perms.size(), 0, 0, {}};
  for (auto& reports : per_trial) {
    for (auto& rep : reports) {
      ++(rep.holds ? sweep.passes : sweep.failures);
      if (keep_reports) sweep.reports.push_back(std::move(rep));
    }
  }
  return sweep;
}

}  // namespace hvm
