#include "hvm/consistency.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hvm {

ConsistencyReport check_strong_fc(const ObservableExpression& f, const HiddenState& hs) {
  ConsistencyReport report;
  report.scenario_label = f.label();
  report.lhs_value = predict(f.eval_operator(), hs);

  const auto& leaves = f.leaves();
  std::vector<double> values(leaves.size());
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    values[k] = predict(leaves[k], hs);
    report.permutation.push_back(k);
    report.details.push_back({k, leaves[k].label(), hs.c(), values[k], hs.state(), hs.state()});
  }
  report.rhs_value = f.eval_real(values);
  report.holds = std::abs(report.lhs_value - report.rhs_value) <= kValueEqualityTol;
  return report;
}

ConsistencyReport check_weak_fc(const ObservableExpression& f, const HiddenState& initial,
                                const std::vector<std::size_t>& permutation, const HiddenDraw& draw) {
  const auto& leaves = f.leaves();
  std::vector<std::size_t> sorted = permutation;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> expected(leaves.size());
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  if (sorted != expected) {
    throw Error(ErrorCode::kInvalidArgument, "permutation does not cover the expression's leaves");
  }

  ConsistencyReport report;
  report.scenario_label = f.label();
  report.permutation = permutation;
  report.lhs_value = predict(f.eval_operator(), initial);

  std::vector<HermitianOperator> ordered;
  ordered.reserve(leaves.size());
  for (std::size_t idx : permutation) ordered.push_back(leaves[idx]);
  const MeasurementTrace trace = measure_sequence(ordered, initial, draw);

  std::vector<double> values(leaves.size());
  for (std::size_t k = 0; k < permutation.size(); ++k) {
    const auto& rec = trace.records[k];
    values[permutation[k]] = rec.value;
    report.details.push_back({permutation[k], rec.observable_label, rec.c_used, rec.value,
                              rec.pre_state, rec.post_state});
  }
  report.rhs_value = f.eval_real(values);
  report.holds = std::abs(report.lhs_value - report.rhs_value) <= kValueEqualityTol;
  return report;
}

ConsistencyReport check_weak_fc(const ObservableExpression& f, const HiddenState& initial,
                                const std::vector<std::size_t>& permutation, Rng& rng) {
  return check_weak_fc(f, initial, permutation, rng_draw(rng));
}

std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

PropositionSummary verify_proposition(const ObservableExpression& f, const PureState& psi,
                                      std::size_t trials, std::uint64_t seed) {
  const ComplexMatrix& m = f.eval_operator().matrix();
  if (m.rows() != static_cast<Eigen::Index>(psi.dim())) {
    throw Error(ErrorCode::kDimensionMismatch, "state and expression dimensions differ");
  }
  const ComplexVector image = m * psi.vector();
  const cplx lambda = psi.vector().dot(image);
  const double residual = (image - lambda * psi.vector()).norm();
  if (residual > 1e-9) {
    std::ostringstream os;
    os << "state is not an eigenvector of " << (f.label().empty() ? "f" : f.label())
       << " (residual " << residual << ")";
    throw Error(ErrorCode::kPreconditionViolated, os.str());
  }

  const auto perms = all_permutations(f.leaves().size());
  PropositionSummary summary;
  summary.trials = trials;
  summary.permutations = perms.size();
  summary.eigenvalue = lambda.real();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::substream(seed, t);
    const HiddenState initial(psi, draw_hidden(rng));
    for (const auto& perm : perms) {
      const auto report = check_weak_fc(f, initial, perm, rng);
      ++(report.holds ? summary.passes : summary.failures);
    }
  }
  return summary;
}

NoGoResult no_go_search(const PeresMerminSquare& square) {
  NoGoResult result;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto r = scalar_multiple_of_identity(square.row_product(k));
    const auto c = scalar_multiple_of_identity(square.column_product(k));
    if (!r || !c) {
      throw Error(ErrorCode::kPreconditionViolated, "row/column products must be multiples of I");
    }
    result.row_constraints[k] = *r;
    result.column_constraints[k] = *c;
  }

  // Bit 3*i + j set means A_ij is assigned -1.
  constexpr unsigned kCells = 9;
  for (unsigned mask = 0; mask < (1u << kCells); ++mask) {
    ++result.total_assignments;
    auto value = [mask](unsigned i, unsigned j) { return (mask >> (3 * i + j)) & 1u ? -1.0 : 1.0; };
    bool rows_ok = true;
    bool cols_ok = true;
    for (unsigned k = 0; k < 3; ++k) {
      rows_ok = rows_ok && value(k, 0) * value(k, 1) * value(k, 2) == result.row_constraints[k];
      cols_ok = cols_ok && value(0, k) * value(1, k) * value(2, k) == result.column_constraints[k];
    }
    const bool odd = std::popcount(mask) % 2 == 1;
    if (rows_ok) {
      ++result.row_satisfying;
      if (!odd) ++result.parity_even_count;
    }
    if (cols_ok) {
      ++result.column_satisfying;
      if (odd) ++result.parity_odd_count;
    }
    if (rows_ok && cols_ok) ++result.satisfying_assignments;
  }
  return result;
}

}  // namespace hvm
