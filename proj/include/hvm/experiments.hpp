#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hvm/consistency.hpp"
#include "hvm/exprs.hpp"
#include "hvm/hvcore.hpp"

namespace hvm {

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 100000;
  double theta = 0.0;
  double tolerance_sigma = 5.0;
  unsigned threads = 0;         // 0: hardware concurrency
  bool record_trials = false;   // keep per-trial outcomes for CSV export

  void validate() const;
};

/// Per-trial outcome, the CSV row (trial, setting, c, value).
struct TrialOutcome {
  std::size_t trial;
  std::string setting;
  double c;
  double value;
};

struct StatReport {
  std::size_t trials = 0;
  std::vector<double> eigenvalues;              // ascending
  std::vector<double> outcome_frequencies;      // aligned with eigenvalues
  std::vector<double> expected_probabilities;   // aligned with eigenvalues
  double max_sigma_deviation = 0.0;
  double tolerance_sigma = 5.0;
  bool pass = false;
  std::vector<TrialOutcome> per_trial;
};

/// Repeated single-shot measurements, each on a fresh copy of `state` with a
/// fresh c from the trial's own substream. Passes when every outcome frequency
/// is within tolerance_sigma * sqrt(p(1-p)/N) of its Born probability.
StatReport born_experiment(const ExperimentConfig& cfg, const PureState& state,
                           const HermitianOperator& obs);

/// cos(theta)|0> + sin(theta)|1>
PureState spin_half_state(double theta);

// ---------------------------------------------------------------------------
// Three-iteration Peres-Mermin trace replay

struct Table1Iteration {
  int index;  // 1-based
  double c;
  PureState initial_state;
  std::array<std::array<double, 3>, 3> grid;
  std::array<double, 3> row_values;
  std::array<double, 3> column_values;
  std::string measured_label;
  double measured_value;
  PureState final_state;
};

struct Table1Replay {
  std::vector<Table1Iteration> iterations;
  MeasurementTrace trace;
  std::optional<std::string> first_mismatch;  // empty when every cell matches
  bool pass() const { return !first_mismatch.has_value(); }
};

/// Reference values of the three-iteration Peres-Mermin trace.
struct Table1Expected {
  std::array<double, 3> c;
  std::array<std::array<std::array<double, 3>, 3>, 3> grids;
  std::array<double, 3> row_values;
  std::array<double, 3> column_values;
  std::array<std::array<std::size_t, 2>, 3> measured_cells;
  std::array<double, 3> measured_values;
  std::array<PureState, 3> final_states;
};

const Table1Expected& table1_expected();

/// Replays the trace from |00> with c = 0.4, 0.1, 0.7 and compares every
/// value against table1_expected().
Table1Replay replay_table1();

// ---------------------------------------------------------------------------
// Deducing B1, B2 from a C outcome

struct ImplicationsCheck {
  double c;
  double b1;
  double b2;
};

struct ImplicationsReport {
  double c;
  PureState state;
  double direct_b1;
  double direct_b2;
  double direct_c;
  PureState collapsed;     // after measuring C
  double deduced_b1;
  double deduced_b2;
  bool mismatch_b1;
  bool mismatch_b2;
  bool non_fc;             // direct assignment disagrees with the deduction
  // Values printed alongside the original worked example, for comparison.
  double printed_b1 = 1.0;
  double printed_b2 = 1.0;
  double printed_c = 1.0;
  bool matches_printed;
  std::vector<ImplicationsCheck> post_collapse;  // M2(B1), M2(B2) over a grid of c
  bool post_collapse_consistent;
};

/// Default state is (|10> + |01>)/sqrt(2).
ImplicationsReport implications_demo(double c);
ImplicationsReport implications_demo(double c, const PureState& state);

// ---------------------------------------------------------------------------
// CHSH

enum class ChshVariant {
  kProductObservable,  // single-shot measurement of A (x) B
  kSequential,         // measure A (x) I, collapse, then I (x) B
};

struct ChshCorrelator {
  std::string label;
  double expectation;
  std::size_t trials;
};

struct ChshReport {
  ChshVariant variant;
  std::size_t trials_per_setting;
  std::array<ChshCorrelator, 4> correlators;  // (a,b) (a,b') (a',b) (a',b')
  double s_value;
  double standard_error;
  double tolerance_sigma;
  bool pass;  // S > 2 and |S - 2 sqrt 2| <= tolerance_sigma * standard_error
  std::vector<TrialOutcome> per_trial;
};

/// Bell state (|00> + |11>)/sqrt(2); A in {Z, X}, B in {(Z+X)/sqrt2, (Z-X)/sqrt2}.
ChshReport chsh_experiment(const ExperimentConfig& cfg,
                           ChshVariant variant = ChshVariant::kProductObservable);

// ---------------------------------------------------------------------------
// Row / column products under sequential measurement

enum class LineKind { kRow, kColumn };

struct ColumnProductReport {
  LineKind kind;
  std::size_t index;  // 1-based
  double expected_product;
  std::size_t trials;
  std::size_t permutations;
  std::size_t passes;
  std::size_t failures;
};

/// Random pure two-qubit start per trial, every ordering of the line's three
/// operators, sequential measurement with collapse; the outcome product must
/// equal the line's forced value.
ColumnProductReport column_product_experiment(const PeresMerminSquare& square, std::size_t index,
                                              std::size_t trials, std::uint64_t seed,
                                              LineKind kind = LineKind::kColumn,
                                              unsigned threads = 0);

/// Weak-FC sweep used by the weak-fc command: `trials` seeds x all
/// permutations of one line of the square, from a fixed initial state.
struct WeakFcSweep {
  std::string label;
  std::size_t trials;
  std::size_t permutations;
  std::size_t passes;
  std::size_t failures;
  std::vector<ConsistencyReport> reports;  // filled only when requested
};

WeakFcSweep weak_fc_sweep(const ObservableExpression& f, const PureState& initial,
                          std::size_t trials, std::uint64_t seed, bool keep_reports = false,
                          unsigned threads = 0);

}  // namespace hvm
