// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hvm/consistency.hpp"
#include "hvm/experiments.hpp"
#include "hvm/json_io.hpp"
#include "hvm/random.hpp"

using namespace hvm;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* title;
  double time_limit_s;  // <= 0: no runtime bound
  std::function<Outcome()> run;
};

PureState bell_state() {
  const double r = 1.0 / std::numbers::sqrt2;
  ComplexVector v(4);
  v << r, 0, 0, r;
  return PureState(v);
}

bool eq(double a, double b) { return std::abs(a - b) <= 1e-9; }

Outcome table1() {
  const auto replay = replay_table1();
  const double grids[3][3][3] = {
      {{-1, -1, -1}, {-1, -1, -1}, {-1, -1, +1}},
      {{-1, -1, -1}, {-1, -1, -1}, {-1, -1, +1}},
      {{+1, +1, +1}, {+1, +1, -1}, {+1, +1, +1}},
  };
  const double measured[3] = {+1, -1, +1};
  const char* measured_labels[3] = {"A33", "A23", "A13"};
  const PureState finals[3] = {basis_ket(4, 0), bell_state(), bell_state()};
  int grid_ok = 0, line_ok = 0, measured_ok = 0, states_ok = 0;
  if (replay.iterations.size() != 3) return {false, "expected three iterations"};
  for (int i = 0; i < 3; ++i) {
    const auto& it = replay.iterations[i];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) grid_ok += eq(it.grid[r][c], grids[i][r][c]);
    for (int k = 0; k < 3; ++k) {
      line_ok += eq(it.row_values[k], 1.0);
      line_ok += eq(it.column_values[k], k == 2 ? -1.0 : 1.0);
    }
    measured_ok += eq(it.measured_value, measured[i]) && it.measured_label == measured_labels[i];
    states_ok += it.final_state.equal_up_to_phase(finals[i], 1e-9);
  }
  std::ostringstream os;
  os << "grid " << grid_ok << "/27, R/C " << line_ok << "/18, measured " << measured_ok << "/3, states " << states_ok
     << "/3";
  return {grid_ok == 27 && line_ok == 18 && measured_ok == 3 && states_ok == 3 && replay.pass(), os.str()};
}

Outcome pm_identities() {
  const auto sq = peres_mermin();
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  double worst_identity = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    worst_identity = std::max(worst_identity, (sq.row_product(k).matrix() - id).norm());
  }
  worst_identity = std::max(worst_identity, (sq.column_product(0).matrix() - id).norm());
  worst_identity = std::max(worst_identity, (sq.column_product(1).matrix() - id).norm());
  worst_identity = std::max(worst_identity, (sq.column_product(2).matrix() + id).norm());
  double worst_comm = 0.0;
  auto comm = [](const HermitianOperator& a, const HermitianOperator& b) {
    return (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
  };
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        worst_comm = std::max({worst_comm, comm(sq.cell(k, a), sq.cell(k, b)), comm(sq.cell(a, k), sq.cell(b, k))});
      }
    }
  }
  std::ostringstream os;
  os << "max identity error " << worst_identity << ", max commutator " << worst_comm;
  return {worst_identity <= 1e-12 && worst_comm <= 1e-10, os.str()};
}

Outcome no_go() {
  const auto a = no_go_search(peres_mermin());
  const auto b = no_go_search(peres_mermin());
  const bool identical = to_json(a).dump() == to_json(b).dump();
  std::ostringstream os;
  os << a.satisfying_assignments << " of " << a.total_assignments << " satisfy all constraints; rerun "
     << (identical ? "identical" : "DIFFERENT");
  return {a.total_assignments == 512 && a.satisfying_assignments == 0 && identical, os.str()};
}

Outcome non_fc_witness() {
  const auto sq = peres_mermin();
  const auto report = check_strong_fc(sq.column_expression(2), HiddenState(basis_ket(4, 0), 0.4));
  std::ostringstream os;
  os << "M(C3) = " << report.lhs_value << ", product of leaf predictions = " << report.rhs_value;
  return {eq(report.lhs_value, -1.0) && eq(report.rhs_value, 1.0) && report.lhs_value != report.rhs_value &&
              !report.holds,
          os.str()};
}

Outcome weak_fc() {
  const auto sq = peres_mermin();
  const auto f = sq.column_expression(2);
  const auto perms = all_permutations(3);
  std::size_t cases = 0, good = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng = Rng::substream(seed, 0);
    const HiddenState start(basis_ket(4, 0), draw_hidden(rng));
    for (const auto& perm : perms) {
      const auto report = check_weak_fc(f, start, perm, rng);
      double product = 1.0;
      for (const auto& step : report.details) product *= step.value;
      ++cases;
      good += eq(product, -1.0) && report.holds;
    }
  }
  std::ostringstream os;
  os << good << "/" << cases << " sequential products equal -1";
  return {cases == 6000 && good == 6000, os.str()};
}

Outcome born() {
  ExperimentConfig cfg;
  cfg.seed = 20261019;
  cfg.trials = 100000;
  const auto spin = born_experiment(cfg, spin_half_state(std::numbers::pi / 3), pauli('z'));
  const double bound = 5.0 * std::sqrt(0.25 * 0.75 / 1e5);
  const double dev = std::abs(spin.outcome_frequencies[1] - 0.25);

  Rng rng(4242);
  int passes = 0;
  for (int scenario = 0; scenario < 100; ++scenario) {
    const std::size_t dim = 2 + rng.next_u64() % 7;
    ExperimentConfig sc;
    sc.seed = rng.next_u64();
    sc.trials = 10000;
    passes += born_experiment(sc, random_state(dim, rng), random_observable(dim, rng)).pass;
  }
  std::ostringstream os;
  os << "|freq(+1) - 0.25| = " << dev << " (bound " << bound << "); random scenarios " << passes << "/100";
  return {dev <= bound && passes >= 98, os.str()};
}

Outcome repeatability() {
  Rng rng(777);
  int repeat_fail = 0, compat_fail = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t dim = 2 + rng.next_u64() % 7;
    const auto op = random_observable(dim, rng);
    const HiddenState hs(random_state(dim, rng), draw_hidden(rng));
    const auto first = measure(op, hs, rng);
    const auto second = measure(op, first.next, rng);
    repeat_fail += !(first.record.value == second.record.value &&
                     second.record.post_state.equal_up_to_phase(first.record.post_state, 1e-9));
  }
  for (int k = 0; k < 1000; ++k) {
    const std::size_t dim = 2 + rng.next_u64() % 7;
    const auto family = random_commuting_family(dim, 2, rng);
    const HiddenState hs(random_state(dim, rng), draw_hidden(rng));
    const auto a1 = measure(family.operators[0], hs, rng);
    const auto b = measure(family.operators[1], a1.next, rng);
    const auto a2 = measure(family.operators[0], b.next, rng);
    compat_fail += a1.record.value != a2.record.value;
  }
  std::ostringstream os;
  os << "repeatability failures " << repeat_fail << "/1000, A-B-A failures " << compat_fail << "/1000";
  return {repeat_fail == 0 && compat_fail == 0, os.str()};
}

Outcome strong_fc_eigenkets() {
  Rng rng(888);
  int failures = 0;
  for (int k = 0; k < 500; ++k) {
    const std::size_t dim = 2 + rng.next_u64() % 7;
    const auto family = random_commuting_family(dim, 3, rng);
    const auto& b = family.operators;
    const ObservableExpression f(
        sum({product({leaf(b[0]), leaf(b[1]), leaf(b[2])}), scale(0.5, leaf(b[0])), scale(-2.0, leaf(b[2]))}));
    const PureState psi = PureState::normalized(family.basis.col(static_cast<Eigen::Index>(rng.next_u64() % dim)));
    failures += !check_strong_fc(f, HiddenState(psi, draw_hidden(rng))).holds;
  }
  std::ostringstream os;
  os << "failures " << failures << "/500";
  return {failures == 0, os.str()};
}

Outcome chsh() {
  ExperimentConfig cfg;
  cfg.seed = 20261019;
  cfg.trials = 100000;
  const auto report = chsh_experiment(cfg);
  const double gap = std::abs(report.s_value - 2.0 * std::numbers::sqrt2);
  std::ostringstream os;
  os << "S = " << report.s_value << ", |S - 2 sqrt2| = " << gap;
  return {gap <= 0.02 && report.s_value > 2.0, os.str()};
}

Outcome proposition() {
  const auto sq = peres_mermin();
  const auto col = verify_proposition(sq.column_expression(2), basis_ket(4, 0), 500, 11);
  const ObservableExpression xy(product({leaf(tensor(pauli('x'), pauli('x')).with_label("XX")),
                                         leaf(tensor(pauli('y'), pauli('y')).with_label("YY"))}));
  const auto bell = verify_proposition(xy, bell_state(), 500, 12);
  bool rejected = false;
  try {
    ComplexVector v(4);
    v << 1, 1, 0, 0;
    verify_proposition(xy, PureState::normalized(v), 10, 0);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::kPreconditionViolated;
  }
  std::ostringstream os;
  os << "C3/|00>: " << col.passes << " pass " << col.failures << " fail; XX*YY/Bell: " << bell.passes << " pass "
     << bell.failures << " fail; non-eigenstate " << (rejected ? "rejected" : "NOT rejected");
  return {col.failures == 0 && col.passes == 3000 && bell.failures == 0 && bell.passes == 1000 && rejected,
          os.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "Three-iteration trace exact replay", 1.0, table1},
      {"AC2", "Peres-Mermin operator identities", 1.0, pm_identities},
      {"AC3", "No-go exhaustive search", 1.0, no_go},
      {"AC4", "Non-FC witness at (|00>, c=0.4)", 0.0, non_fc_witness},
      {"AC5", "Weak-FC exhaustion, column 3", 10.0, weak_fc},
      {"AC6", "Born rule", 30.0, born},
      {"AC7", "Repeatability and compatibility persistence", 0.0, repeatability},
      {"AC8", "Strong FC on common eigenkets", 0.0, strong_fc_eigenkets},
      {"AC9", "CHSH", 60.0, chsh},
      {"AC10", "Proposition verification", 0.0, proposition},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, {}};
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s <= 0.0 || seconds < c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    failed += !pass;
    std::printf("[%s] %-5s %-45s %s (%.3f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title, outcome.detail.c_str(),
                seconds, in_time ? "" : ", over time limit");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
