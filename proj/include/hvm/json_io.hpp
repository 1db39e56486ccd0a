#pragma once

#include <ostream>
#include <span>

#include <json.hpp>

#include "hvm/consistency.hpp"
#include "hvm/experiments.hpp"
#include "hvm/hvcore.hpp"

namespace hvm {

using Json = nlohmann::ordered_json;

/// Amplitudes as [[re, im], ...].
Json state_to_json(const PureState& state);
PureState state_from_json(const Json& j);

/// Row-major [[[re, im], ...], ...].
Json matrix_to_json(const ComplexMatrix& m);

Json to_json(const MeasurementRecord& record);
/// { seed, records: [ { label, c, value, pre_state, post_state } ] }
Json to_json(const MeasurementTrace& trace);
MeasurementTrace trace_from_json(const Json& j);

Json to_json(const ConsistencyReport& report);
Json to_json(const NoGoResult& result);
Json to_json(const PropositionSummary& summary);

Json to_json(const StatReport& report);
Json to_json(const Table1Replay& replay);
Json to_json(const ImplicationsReport& report);
Json to_json(const ChshReport& report);
Json to_json(const ColumnProductReport& report);
Json to_json(const WeakFcSweep& sweep);
Json to_json(const PeresMerminSquare& square);

/// Header "trial,setting,c,value" then one line per outcome.
void write_csv(std::ostream& os, std::span<const TrialOutcome> outcomes);

}  // namespace hvm
