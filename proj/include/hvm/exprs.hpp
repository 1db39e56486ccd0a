#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hvm/opalg.hpp"

namespace hvm {

/// Unvalidated expression tree node. Build with leaf/sum/product/scale, then
/// wrap in an ObservableExpression to validate.
class ExprNode {
 public:
  enum class Kind { Leaf, Sum, Product, Scale };

  Kind kind() const noexcept { return kind_; }
  const HermitianOperator& op() const { return *op_; }
  const std::vector<ExprNode>& children() const noexcept { return children_; }
  cplx factor() const noexcept { return factor_; }

  friend ExprNode leaf(HermitianOperator op);
  friend ExprNode sum(std::vector<ExprNode> children);
  friend ExprNode product(std::vector<ExprNode> children);
  friend ExprNode scale(cplx factor, ExprNode child);

 private:
  explicit ExprNode(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::shared_ptr<const HermitianOperator> op_;
  std::vector<ExprNode> children_;
  cplx factor_{1.0, 0.0};
};

ExprNode leaf(HermitianOperator op);
ExprNode sum(std::vector<ExprNode> children);
ExprNode product(std::vector<ExprNode> children);
ExprNode scale(cplx factor, ExprNode child);

/// A polynomial f(B_1, ..., B_N) in mutually commuting observables.
///
/// Construction checks that all leaves share one dimension, that distinct leaves
/// commute within 1e-10, and that the evaluated operator is Hermitian within
/// 1e-10. Leaves are identified by label when labelled, else by matrix.
class ObservableExpression {
 public:
  explicit ObservableExpression(ExprNode root, std::string label = {});

  const ExprNode& root() const noexcept { return root_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t dim() const noexcept { return dim_; }

  /// Distinct leaves in order of first appearance (depth first).
  const std::vector<HermitianOperator>& leaves() const noexcept { return leaves_; }

  /// f(B_1, ..., B_N) by matrix arithmetic.
  const HermitianOperator& eval_operator() const noexcept { return evaluated_; }

  /// f~(b_1, ..., b_N); values indexed like leaves().
  double eval_real(std::span<const double> leaf_values) const;

  /// Same, keyed by leaf label.
  double eval_real(const std::map<std::string, double>& leaf_values) const;

 private:
  std::size_t leaf_index(const HermitianOperator& op) const;

  ExprNode root_;
  std::string label_;
  std::size_t dim_ = 0;
  std::vector<HermitianOperator> leaves_;
  HermitianOperator evaluated_;
};

/// The 3x3 two-qubit Pauli grid whose rows multiply to +I and whose columns
/// multiply to +I, +I, -I.
class PeresMerminSquare {
 public:
  PeresMerminSquare();

  const HermitianOperator& cell(std::size_t row, std::size_t col) const { return cells_.at(row).at(col); }
  const HermitianOperator& row_product(std::size_t i) const { return rows_.at(i); }
  const HermitianOperator& column_product(std::size_t j) const { return cols_.at(j); }

  ObservableExpression row_expression(std::size_t i) const;
  ObservableExpression column_expression(std::size_t j) const;

 private:
  std::array<std::array<HermitianOperator, 3>, 3> cells_;
  std::array<HermitianOperator, 3> rows_;
  std::array<HermitianOperator, 3> cols_;
};

PeresMerminSquare peres_mermin();

struct ImplicationsOperators {
  HermitianOperator b1;
  HermitianOperator b2;
  HermitianOperator c;
};

/// B1, B2 and C = f(B1, B2) in the exact projector forms used for the
/// "deduce B from C" demonstration; all diagonal in the computational basis.
ImplicationsOperators implications_operators();

}  // namespace hvm
