#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hvm/cli.hpp"
#include "hvm/consistency.hpp"
#include "hvm/experiments.hpp"
#include "hvm/json_io.hpp"

namespace py = pybind11;

namespace {

py::object to_python(const hvm::Json& j) {
  switch (j.type()) {
    case hvm::Json::value_t::null: return py::none();
    case hvm::Json::value_t::boolean: return py::bool_(j.get<bool>());
    case hvm::Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case hvm::Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case hvm::Json::value_t::number_float: return py::float_(j.get<double>());
    case hvm::Json::value_t::string: return py::str(j.get<std::string>());
    case hvm::Json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(to_python(item));
      return out;
    }
    case hvm::Json::value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = to_python(value);
      return out;
    }
    default: break;
  }
  return py::none();
}

hvm::HermitianOperator as_operator(const hvm::ComplexMatrix& m) { return hvm::HermitianOperator(m); }
hvm::PureState as_state(const hvm::ComplexVector& v) { return hvm::PureState(v); }

hvm::ObservableExpression line(const hvm::PeresMerminSquare& sq, const std::string& kind, std::size_t index) {
  if (index < 1 || index > 3) throw hvm::Error(hvm::ErrorCode::kInvalidArgument, "index must be 1, 2 or 3");
  return kind == "row" ? sq.row_expression(index - 1) : sq.column_expression(index - 1);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Non-contextual hidden-variable model: prediction map, collapse and consistency checks";

  py::register_exception<hvm::Error>(m, "HvmError", PyExc_ValueError);

  m.def("pauli", [](char axis) { return hvm::pauli(axis).matrix(); }, py::arg("axis"));
  m.def("basis_ket", [](std::size_t dim, std::size_t index) { return hvm::basis_ket(dim, index).vector(); },
        py::arg("dim"), py::arg("index"));
  m.def("tensor", [](const hvm::ComplexMatrix& a, const hvm::ComplexMatrix& b) {
          return hvm::tensor(as_operator(a), as_operator(b)).matrix();
        },
        py::arg("a"), py::arg("b"));
  m.def("commutes", [](const hvm::ComplexMatrix& a, const hvm::ComplexMatrix& b, double tol) {
          return hvm::commutes(as_operator(a), as_operator(b), tol);
        },
        py::arg("a"), py::arg("b"), py::arg("tol") = hvm::kOperatorEqualityTolerance);
  m.def("spectral", [](const hvm::ComplexMatrix& a, double tol) {
          std::vector<std::pair<double, hvm::ComplexMatrix>> out;
          const auto decomposition = hvm::spectral(as_operator(a), tol);
          for (const auto& b : decomposition.branches()) out.emplace_back(b.eigenvalue, b.projector);
          return out;
        },
        py::arg("a"), py::arg("degeneracy_tol") = -1.0,
        "Ascending (eigenvalue, projector) pairs.");

  m.def("predict", [](const hvm::ComplexMatrix& obs, const hvm::ComplexVector& state, double c) {
          return hvm::predict(as_operator(obs), hvm::HiddenState(as_state(state), c));
        },
        py::arg("obs"), py::arg("state"), py::arg("c"),
        "Smallest eigenvalue a with c <= cumulative Born weight up to a.");
  m.def("update", [](const hvm::ComplexMatrix& obs, const hvm::ComplexVector& state, double value) {
          return hvm::update(as_operator(obs).spectrum(), as_state(state), value).vector();
        },
        py::arg("obs"), py::arg("state"), py::arg("value"));
  m.def("draw_hidden", [](std::uint64_t seed, std::uint64_t index) {
          hvm::Rng rng = hvm::Rng::substream(seed, index);
          return hvm::draw_hidden(rng);
        },
        py::arg("seed"), py::arg("index") = 0);

  m.def("replay_table1", [] { return to_python(hvm::to_json(hvm::replay_table1())); });
  m.def("no_go_search", [] { return to_python(hvm::to_json(hvm::no_go_search(hvm::peres_mermin()))); });
  m.def("peres_mermin", [] { return to_python(hvm::to_json(hvm::peres_mermin())); });

  m.def("strong_fc", [](const std::string& kind, std::size_t index, const hvm::ComplexVector& state, double c) {
          const auto sq = hvm::peres_mermin();
          return to_python(hvm::to_json(hvm::check_strong_fc(line(sq, kind, index), hvm::HiddenState(as_state(state), c))));
        },
        py::arg("kind") = "column", py::arg("index") = 3, py::arg("state"), py::arg("c"));
  m.def("weak_fc_sweep", [](const std::string& kind, std::size_t index, const hvm::ComplexVector& state,
                            std::size_t trials, std::uint64_t seed) {
          const auto sq = hvm::peres_mermin();
          return to_python(hvm::to_json(hvm::weak_fc_sweep(line(sq, kind, index), as_state(state), trials, seed)));
        },
        py::arg("kind") = "column", py::arg("index") = 3, py::arg("state"), py::arg("trials") = 1000,
        py::arg("seed") = 0);
  m.def("verify_proposition", [](const std::string& kind, std::size_t index, const hvm::ComplexVector& state,
                                 std::size_t trials, std::uint64_t seed) {
          const auto sq = hvm::peres_mermin();
          return to_python(hvm::to_json(hvm::verify_proposition(line(sq, kind, index), as_state(state), trials, seed)));
        },
        py::arg("kind") = "column", py::arg("index") = 3, py::arg("state"), py::arg("trials") = 500,
        py::arg("seed") = 0);

  m.def("born_experiment", [](const hvm::ComplexVector& state, const hvm::ComplexMatrix& obs, std::size_t trials,
                              std::uint64_t seed, double tolerance_sigma) {
          hvm::ExperimentConfig cfg;
          cfg.trials = trials;
          cfg.seed = seed;
          cfg.tolerance_sigma = tolerance_sigma;
          return to_python(hvm::to_json(hvm::born_experiment(cfg, as_state(state), as_operator(obs))));
        },
        py::arg("state"), py::arg("obs"), py::arg("trials") = 100000, py::arg("seed") = 0,
        py::arg("tolerance_sigma") = 5.0);
  m.def("chsh_experiment", [](std::size_t trials, std::uint64_t seed, const std::string& variant) {
          hvm::ExperimentConfig cfg;
          cfg.trials = trials;
          cfg.seed = seed;
          const auto v = variant == "sequential" ? hvm::ChshVariant::kSequential : hvm::ChshVariant::kProductObservable;
          return to_python(hvm::to_json(hvm::chsh_experiment(cfg, v)));
        },
        py::arg("trials") = 100000, py::arg("seed") = 0, py::arg("variant") = "product");
  m.def("implications_demo", [](double c) { return to_python(hvm::to_json(hvm::implications_demo(c))); },
        py::arg("c"));
  m.def("column_product_experiment", [](std::size_t index, std::size_t trials, std::uint64_t seed, const std::string& kind) {
          const auto k = kind == "row" ? hvm::LineKind::kRow : hvm::LineKind::kColumn;
          return to_python(hvm::to_json(hvm::column_product_experiment(hvm::peres_mermin(), index, trials, seed, k)));
        },
        py::arg("index"), py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("kind") = "column");

  m.def("run_cli", [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = hvm::cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a command-line invocation in-process; returns (exit_code, stdout, stderr).");
}
