#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hvm/exprs.hpp"
#include "hvm/hvcore.hpp"

namespace hvm {

inline constexpr double kValueEqualityTol = 1e-9;

/// One leaf evaluation inside a consistency check.
struct ConsistencyStep {
  std::size_t leaf_index;
  std::string label;
  double c;
  double value;
  PureState pre_state;
  PureState post_state;  // equals pre_state for same-state (strong) checks
};

/// Both sides of M(f(B)) = f~(M(B_1), ...) for one scenario.
struct ConsistencyReport {
  std::string scenario_label;
  std::vector<std::size_t> permutation;  // leaf order used (identity for strong checks)
  double lhs_value;
  double rhs_value;
  bool holds;
  std::vector<ConsistencyStep> details;
};

/// Both sides at the same hidden state, no collapse.
ConsistencyReport check_strong_fc(const ObservableExpression& f, const HiddenState& hs);

/// Left side at `initial`; right side from measuring the leaves sequentially in
/// `permutation` order with collapse and a fresh c from `draw` before every
/// step after the first.
ConsistencyReport check_weak_fc(const ObservableExpression& f, const HiddenState& initial,
                                const std::vector<std::size_t>& permutation, const HiddenDraw& draw);

ConsistencyReport check_weak_fc(const ObservableExpression& f, const HiddenState& initial,
                                const std::vector<std::size_t>& permutation, Rng& rng);

/// All N! orderings of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> all_permutations(std::size_t n);

struct PropositionSummary {
  std::size_t trials = 0;
  std::size_t permutations = 0;
  std::size_t passes = 0;
  std::size_t failures = 0;
  double eigenvalue = 0.0;
};

/// Weak-FC over `trials` seeded substreams and every leaf permutation, for a
/// state that is an eigenvector of f (precondition; kPreconditionViolated otherwise).
PropositionSummary verify_proposition(const ObservableExpression& f, const PureState& psi,
                                      std::size_t trials, std::uint64_t seed);

/// Exhaustive search over all 512 maps {A_ij} -> {+1, -1}.
struct NoGoResult {
  std::size_t total_assignments = 0;
  std::size_t satisfying_assignments = 0;
  std::size_t row_satisfying = 0;     // all three row constraints
  std::size_t column_satisfying = 0;  // all three column constraints
  std::size_t parity_odd_count = 0;   // column-satisfying with an odd number of -1 entries
  std::size_t parity_even_count = 0;  // row-satisfying with an even number of -1 entries
  std::array<double, 3> row_constraints{};
  std::array<double, 3> column_constraints{};
};

/// Constraint values are read off the square's operator products.
NoGoResult no_go_search(const PeresMerminSquare& square);

}  // namespace hvm
