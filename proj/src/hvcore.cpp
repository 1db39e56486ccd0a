#include "hvm/hvcore.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace hvm {

namespace {

constexpr double kZeroProbability = 1e-12;
constexpr double kCumulativeSlack = 1e-8;

void require_dims(const SpectralDecomposition& obs, const PureState& state) {
  if (obs.dim() != state.dim()) {
    std::ostringstream os;
    os << "observable dimension " << obs.dim() << " vs state dimension " << state.dim();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

std::string label_or(const HermitianOperator& op, const char* fallback) {
  return op.label().empty() ? std::string(fallback) : op.label();
}

}  // namespace

HiddenState::HiddenState(PureState state, double c) : state_(std::move(state)), c_(c) {
  if (!(c > 0.0 && c < 1.0)) {
    std::ostringstream os;
    os << "hidden variable c = " << c << " outside (0, 1)";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

bool MeasurementTrace::is_chained(double tol) const {
  for (std::size_t k = 1; k < records.size(); ++k) {
    const auto diff = records[k].pre_state.vector() - records[k - 1].post_state.vector();
    if (diff.norm() > tol) return false;
  }
  return true;
}

HiddenDraw rng_draw(Rng& rng) {
  return [&rng] { return draw_hidden(rng); };
}

HiddenDraw scripted_draw(std::vector<double> values) {
  auto script = std::make_shared<std::vector<double>>(std::move(values));
  auto pos = std::make_shared<std::size_t>(0);
  return [script, pos] {
    if (*pos >= script->size()) {
      throw Error(ErrorCode::kScriptExhausted, "no more scripted c values");
    }
    return (*script)[(*pos)++];
  };
}

std::vector<double> branch_probabilities(const SpectralDecomposition& obs, const PureState& state) {
  require_dims(obs, state);
  std::vector<double> probs;
  probs.reserve(obs.size());
  for (const auto& b : obs.branches()) {
    const double p = (b.projector * state.vector()).squaredNorm();
    probs.push_back(p < kZeroProbability ? 0.0 : p);
  }
  return probs;
}

std::vector<double> cumulative_weights(const SpectralDecomposition& obs, const PureState& state) {
  std::vector<double> cum = branch_probabilities(obs, state);
  for (std::size_t k = 1; k < cum.size(); ++k) cum[k] += cum[k - 1];
  if (cum.empty() || cum.back() < 1.0 - kCumulativeSlack) {
    std::ostringstream os;
    os << "cumulative weight " << (cum.empty() ? 0.0 : cum.back()) << " < 1";
    throw Error(ErrorCode::kMalformedDecomposition, os.str());
  }
  return cum;
}

std::size_t predict_branch(const SpectralDecomposition& obs, const HiddenState& hs) {
  const std::vector<double> cum = cumulative_weights(obs, hs.state());
  for (std::size_t k = 0; k < cum.size(); ++k) {
    if (hs.c() <= cum[k]) return k;
  }
  // c < 1 and cum.back() >= 1 - 1e-8: only reachable for c in the rounding slack.
  std::size_t last = cum.size() - 1;
  while (last > 0 && cum[last] == cum[last - 1]) --last;
  return last;
}

double predict(const SpectralDecomposition& obs, const HiddenState& hs) {
  return obs.branches()[predict_branch(obs, hs)].eigenvalue;
}

double predict(const HermitianOperator& obs, const HiddenState& hs) {
  return predict(obs.spectrum(), hs);
}

PureState update(const SpectralDecomposition& obs, const PureState& state, double value) {
  require_dims(obs, state);
  const auto branch = obs.find_branch(value);
  if (!branch) {
    std::ostringstream os;
    os << value;
    throw Error(ErrorCode::kNotABranch, os.str());
  }
  const ComplexVector projected = obs.branches()[*branch].projector * state.vector();
  const double weight = projected.squaredNorm();
  if (weight <= kZeroProbability) {
    std::ostringstream os;
    os << "||P psi||^2 = " << weight << " for value " << value;
    throw Error(ErrorCode::kZeroProbabilityBranch, os.str());
  }
  return PureState::normalized(projected);
}

PureState update(const SpectralDecomposition& obs, const HiddenState& hs, double value) {
  return update(obs, hs.state(), value);
}

MeasureOutcome measure_step(const HermitianOperator& obs, const HiddenState& hs, double next_c) {
  const SpectralDecomposition& spec = obs.spectrum();
  const double value = predict(spec, hs);
  PureState post = update(spec, hs.state(), value);
  MeasurementRecord record{label_or(obs, "?"), hs.c(), value, hs.state(), post};
  return {std::move(record), HiddenState(std::move(post), next_c)};
}

MeasureOutcome measure(const HermitianOperator& obs, const HiddenState& hs, Rng& rng) {
  return measure_step(obs, hs, draw_hidden(rng));
}

MeasurementTrace measure_sequence(const std::vector<HermitianOperator>& observables,
                                  const HiddenState& initial, const HiddenDraw& draw) {
  MeasurementTrace trace;
  HiddenState current = initial;
  for (std::size_t k = 0; k < observables.size(); ++k) {
    const SpectralDecomposition& spec = observables[k].spectrum();
    const double value = predict(spec, current);
    PureState post = update(spec, current.state(), value);
    trace.records.push_back(
        {label_or(observables[k], "?"), current.c(), value, current.state(), post});
    if (k + 1 < observables.size()) current = HiddenState(std::move(post), draw());
  }
  return trace;
}

}  // namespace hvm
