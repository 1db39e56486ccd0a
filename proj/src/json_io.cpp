#include "hvm/json_io.hpp"

#include <iomanip>

namespace hvm {

Json state_to_json(const PureState& state) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < state.vector().size(); ++i) {
    const cplx z = state.vector()(i);
    arr.push_back({z.real(), z.imag()});
  }
  return arr;
}

PureState state_from_json(const Json& j) {
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = cplx(j.at(i).at(0).get<double>(), j.at(i).at(1).get<double>());
  }
  return PureState(std::move(v));
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const MeasurementRecord& record) {
  Json j;
  j["label"] = record.observable_label;
  j["c"] = record.c_used;
  j["value"] = record.value;
  j["pre_state"] = state_to_json(record.pre_state);
  j["post_state"] = state_to_json(record.post_state);
  return j;
}

Json to_json(const MeasurementTrace& trace) {
  Json j;
  j["seed"] = trace.seed ? Json(*trace.seed) : Json(nullptr);
  j["records"] = Json::array();
  for (const auto& r : trace.records) j["records"].push_back(to_json(r));
  return j;
}

MeasurementTrace trace_from_json(const Json& j) {
  MeasurementTrace trace;
  if (!j.at("seed").is_null()) trace.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& r : j.at("records")) {
    trace.records.push_back({r.at("label").get<std::string>(), r.at("c").get<double>(),
                             r.at("value").get<double>(), state_from_json(r.at("pre_state")),
                             state_from_json(r.at("post_state"))});
  }
  return trace;
}

Json to_json(const ConsistencyReport& report) {
  Json j;
  j["scenario_label"] = report.scenario_label;
  j["lhs_value"] = report.lhs_value;
  j["rhs_value"] = report.rhs_value;
  j["holds"] = report.holds;
  Json details;
  details["permutation"] = report.permutation;
  details["steps"] = Json::array();
  for (const auto& s : report.details) {
    Json step;
    step["leaf_index"] = s.leaf_index;
    step["label"] = s.label;
    step["c"] = s.c;
    step["value"] = s.value;
    step["pre_state"] = state_to_json(s.pre_state);
    step["post_state"] = state_to_json(s.post_state);
    details["steps"].push_back(std::move(step));
  }
  j["details"] = std::move(details);
  return j;
}

Json to_json(const NoGoResult& result) {
  Json j;
  j["total_assignments"] = result.total_assignments;
  j["satisfying_assignments"] = result.satisfying_assignments;
  j["parity_odd_count"] = result.parity_odd_count;
  j["parity_even_count"] = result.parity_even_count;
  j["row_satisfying"] = result.row_satisfying;
  j["column_satisfying"] = result.column_satisfying;
  j["row_constraints"] = result.row_constraints;
  j["column_constraints"] = result.column_constraints;
  return j;
}

Json to_json(const PropositionSummary& summary) {
  Json j;
  j["trials"] = summary.trials;
  j["permutations"] = summary.permutations;
  j["passes"] = summary.passes;
  j["failures"] = summary.failures;
  j["eigenvalue"] = summary.eigenvalue;
  return j;
}

Json to_json(const StatReport& report) {
  Json j;
  j["trials"] = report.trials;
  Json freq = Json::array();
  Json expected = Json::array();
  for (std::size_t k = 0; k < report.eigenvalues.size(); ++k) {
    freq.push_back({{"eigenvalue", report.eigenvalues[k]}, {"frequency", report.outcome_frequencies[k]}});
    expected.push_back(
        {{"eigenvalue", report.eigenvalues[k]}, {"probability", report.expected_probabilities[k]}});
  }
  j["outcome_frequencies"] = std::move(freq);
  j["expected_probabilities"] = std::move(expected);
  j["max_sigma_deviation"] = report.max_sigma_deviation;
  j["tolerance_sigma"] = report.tolerance_sigma;
  j["pass"] = report.pass;
  return j;
}

Json to_json(const Table1Replay& replay) {
  Json j;
  j["pass"] = replay.pass();
  j["first_mismatch"] = replay.first_mismatch ? Json(*replay.first_mismatch) : Json(nullptr);
  j["iterations"] = Json::array();
  for (const auto& it : replay.iterations) {
    Json ij;
    ij["i"] = it.index;
    ij["c"] = it.c;
    ij["initial_state"] = state_to_json(it.initial_state);
    ij["grid"] = it.grid;
    ij["row_values"] = it.row_values;
    ij["column_values"] = it.column_values;
    ij["measured"] = {{"label", it.measured_label}, {"value", it.measured_value}};
    ij["final_state"] = state_to_json(it.final_state);
    j["iterations"].push_back(std::move(ij));
  }
  j["trace"] = to_json(replay.trace);
  return j;
}

Json to_json(const ImplicationsReport& report) {
  Json j;
  j["c"] = report.c;
  j["state"] = state_to_json(report.state);
  j["direct"] = {{"B1", report.direct_b1}, {"B2", report.direct_b2}, {"C", report.direct_c}};
  j["collapsed_state"] = state_to_json(report.collapsed);
  j["deduced"] = {{"B1", report.deduced_b1}, {"B2", report.deduced_b2}};
  j["mismatch"] = {{"B1", report.mismatch_b1}, {"B2", report.mismatch_b2}};
  j["non_fc"] = report.non_fc;
  j["printed"] = {{"B1", report.printed_b1}, {"B2", report.printed_b2}, {"C", report.printed_c}};
  j["matches_printed"] = report.matches_printed;
  Json post = Json::array();
  for (const auto& chk : report.post_collapse) post.push_back({{"c", chk.c}, {"B1", chk.b1}, {"B2", chk.b2}});
  j["post_collapse"] = std::move(post);
  j["post_collapse_consistent"] = report.post_collapse_consistent;
  return j;
}

Json to_json(const ChshReport& report) {
  Json j;
  j["variant"] = report.variant == ChshVariant::kProductObservable ? "product" : "sequential";
  j["trials_per_setting"] = report.trials_per_setting;
  j["correlators"] = Json::array();
  for (const auto& corr : report.correlators) {
    j["correlators"].push_back({{"setting", corr.label}, {"E", corr.expectation}, {"trials", corr.trials}});
  }
  j["S"] = report.s_value;
  j["standard_error"] = report.standard_error;
  j["tolerance_sigma"] = report.tolerance_sigma;
  j["pass"] = report.pass;
  return j;
}

Json to_json(const ColumnProductReport& report) {
  Json j;
  j["kind"] = report.kind == LineKind::kColumn ? "column" : "row";
  j["index"] = report.index;
  j["expected_product"] = report.expected_product;
  j["trials"] = report.trials;
  j["permutations"] = report.permutations;
  j["passes"] = report.passes;
  j["failures"] = report.failures;
  return j;
}

Json to_json(const WeakFcSweep& sweep) {
  Json j;
  j["label"] = sweep.label;
  j["trials"] = sweep.trials;
  j["permutations"] = sweep.permutations;
  j["passes"] = sweep.passes;
  j["failures"] = sweep.failures;
  if (!sweep.reports.empty()) {
    j["reports"] = Json::array();
    for (const auto& r : sweep.reports) j["reports"].push_back(to_json(r));
  }
  return j;
}

Json to_json(const PeresMerminSquare& square) {
  Json j;
  Json cells = Json::array();
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      cells.push_back({{"label", square.cell(r, c).label()}, {"matrix", matrix_to_json(square.cell(r, c).matrix())}});
    }
  }
  j["cells"] = std::move(cells);
  Json rows = Json::array();
  Json cols = Json::array();
  for (std::size_t k = 0; k < 3; ++k) {
    rows.push_back({{"label", square.row_product(k).label()},
                    {"identity_multiple", *scalar_multiple_of_identity(square.row_product(k))}});
    cols.push_back({{"label", square.column_product(k).label()},
                    {"identity_multiple", *scalar_multiple_of_identity(square.column_product(k))}});
  }
  j["rows"] = std::move(rows);
  j["columns"] = std::move(cols);
  return j;
}

void write_csv(std::ostream& os, std::span<const TrialOutcome> outcomes) {
  os << "trial,setting,c,value\n";
  const auto old_precision = os.precision(17);
  for (const auto& o : outcomes) {
    os << o.trial << ',' << o.setting << ',' << o.c << ',' << o.value << '\n';
  }
  os.precision(old_precision);
}

}  // namespace hvm
