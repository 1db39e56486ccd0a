#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hvm/opalg.hpp"
#include "hvm/rng.hpp"

namespace hvm {

/// Quantum state together with the scalar hidden variable c in (0, 1).
class HiddenState {
 public:
  HiddenState(PureState state, double c);

  const PureState& state() const noexcept { return state_; }
  double c() const noexcept { return c_; }

  HiddenState with_c(double c) const { return HiddenState(state_, c); }

 private:
  PureState state_;
  double c_;
};

struct MeasurementRecord {
  std::string observable_label;
  double c_used;
  double value;
  PureState pre_state;
  PureState post_state;
};

struct MeasurementTrace {
  std::optional<std::uint64_t> seed;
  std::vector<MeasurementRecord> records;

  /// Each record's pre_state equals the previous post_state within tol.
  bool is_chained(double tol = 1e-10) const;
};

/// Source of fresh hidden-variable values, one per measurement event.
using HiddenDraw = std::function<double()>;

HiddenDraw rng_draw(Rng& rng);

/// Replays a fixed list of c values; throws kScriptExhausted past the end.
HiddenDraw scripted_draw(std::vector<double> values);

/// Cumulative Born weights sum_{a' <= a} ||P_a' psi||^2 in ascending branch order.
std::vector<double> cumulative_weights(const SpectralDecomposition& obs, const PureState& state);

/// Branch probabilities ||P_a psi||^2, ascending branch order.
std::vector<double> branch_probabilities(const SpectralDecomposition& obs, const PureState& state);

/// Index of the smallest branch whose cumulative weight reaches c.
std::size_t predict_branch(const SpectralDecomposition& obs, const HiddenState& hs);

/// The prediction map: smallest eigenvalue a with c <= sum_{a' <= a} ||P_a' psi||^2.
double predict(const SpectralDecomposition& obs, const HiddenState& hs);
double predict(const HermitianOperator& obs, const HiddenState& hs);

/// Collapse onto the `value` branch: P psi / ||P psi||.
PureState update(const SpectralDecomposition& obs, const PureState& state, double value);
PureState update(const SpectralDecomposition& obs, const HiddenState& hs, double value);

struct MeasureOutcome {
  MeasurementRecord record;
  HiddenState next;
};

/// One measurement event using hs.c(): predict, collapse, then pair the
/// collapsed state with `next_c` for the following event.
MeasureOutcome measure_step(const HermitianOperator& obs, const HiddenState& hs, double next_c);

/// measure_step with the next c drawn from `rng`.
MeasureOutcome measure(const HermitianOperator& obs, const HiddenState& hs, Rng& rng);

/// Sequential measurements; the c for step k > 0 comes from `draw`, and no
/// value is drawn after the final step.
MeasurementTrace measure_sequence(const std::vector<HermitianOperator>& observables,
                                  const HiddenState& initial, const HiddenDraw& draw);

}  // namespace hvm
