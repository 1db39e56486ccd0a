#include "hvm/exprs.hpp"

#include <sstream>

namespace hvm {

namespace {

constexpr double kLeafCommutationTol = 1e-10;
constexpr double kResultHermitianTol = 1e-10;

void collect_leaves(const ExprNode& node, std::vector<HermitianOperator>& out) {
  if (node.kind() == ExprNode::Kind::Leaf) {
    for (const auto& seen : out) {
      if (same_operator(seen, node.op())) return;
    }
    out.push_back(node.op());
    return;
  }
  for (const auto& child : node.children()) collect_leaves(child, out);
}

std::vector<HermitianOperator> validated_leaves(const ExprNode& root) {
  std::vector<HermitianOperator> leaves;
  collect_leaves(root, leaves);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i].dim() != leaves.front().dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "expression leaves have different dimensions");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!commutes(leaves[i], leaves[j], kLeafCommutationTol)) {
        throw Error(ErrorCode::kNonCommutingLeaves,
                    "'" + leaves[j].label() + "' and '" + leaves[i].label() + "'");
      }
    }
  }
  return leaves;
}

ComplexMatrix evaluate(const ExprNode& node, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  switch (node.kind()) {
    case ExprNode::Kind::Leaf:
      return node.op().matrix();
    case ExprNode::Kind::Sum: {
      ComplexMatrix acc = ComplexMatrix::Zero(n, n);
      for (const auto& child : node.children()) acc += evaluate(child, dim);
      return acc;
    }
    case ExprNode::Kind::Product: {
      ComplexMatrix acc = ComplexMatrix::Identity(n, n);
      for (const auto& child : node.children()) acc = (acc * evaluate(child, dim)).eval();
      return acc;
    }
    case ExprNode::Kind::Scale:
      return node.factor() * evaluate(node.children().front(), dim);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown expression node");
}

HermitianOperator evaluate_hermitian(const ExprNode& root, std::size_t dim, const std::string& label) {
  ComplexMatrix m = evaluate(root, dim);
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kResultHermitianTol) {
    throw Error(ErrorCode::kNotHermitian, "evaluated expression" + (label.empty() ? "" : " '" + label + "'"));
  }
  m = 0.5 * (m + m.adjoint()).eval();
  return HermitianOperator(std::move(m), label);
}

}  // namespace

ExprNode leaf(HermitianOperator op) {
  ExprNode node(ExprNode::Kind::Leaf);
  node.op_ = std::make_shared<const HermitianOperator>(std::move(op));
  return node;
}

ExprNode sum(std::vector<ExprNode> children) {
  if (children.empty()) throw Error(ErrorCode::kInvalidArgument, "empty sum");
  ExprNode node(ExprNode::Kind::Sum);
  node.children_ = std::move(children);
  return node;
}

ExprNode product(std::vector<ExprNode> children) {
  if (children.empty()) throw Error(ErrorCode::kInvalidArgument, "empty product");
  ExprNode node(ExprNode::Kind::Product);
  node.children_ = std::move(children);
  return node;
}

ExprNode scale(cplx factor, ExprNode child) {
  ExprNode node(ExprNode::Kind::Scale);
  node.factor_ = factor;
  node.children_.push_back(std::move(child));
  return node;
}

ObservableExpression::ObservableExpression(ExprNode root, std::string label)
    : root_(std::move(root)),
      label_(std::move(label)),
      leaves_(validated_leaves(root_)),
      evaluated_(evaluate_hermitian(root_, leaves_.front().dim(), label_)) {
  dim_ = leaves_.front().dim();
}

std::size_t ObservableExpression::leaf_index(const HermitianOperator& op) const {
  for (std::size_t k = 0; k < leaves_.size(); ++k) {
    if (same_operator(leaves_[k], op)) return k;
  }
  throw Error(ErrorCode::kMissingLeafValue, "leaf not registered");
}

double ObservableExpression::eval_real(std::span<const double> leaf_values) const {
  if (leaf_values.size() < leaves_.size()) {
    std::ostringstream os;
    os << "expected " << leaves_.size() << " leaf values, got " << leaf_values.size();
    throw Error(ErrorCode::kMissingLeafValue, os.str());
  }
  auto go = [&](const auto& self, const ExprNode& node) -> double {
    switch (node.kind()) {
      case ExprNode::Kind::Leaf:
        return leaf_values[leaf_index(node.op())];
      case ExprNode::Kind::Sum: {
        double acc = 0.0;
        for (const auto& child : node.children()) acc += self(self, child);
        return acc;
      }
      case ExprNode::Kind::Product: {
        double acc = 1.0;
        for (const auto& child : node.children()) acc *= self(self, child);
        return acc;
      }
      case ExprNode::Kind::Scale:
        if (node.factor().imag() != 0.0) {
          std::ostringstream os;
          os << node.factor();
          throw Error(ErrorCode::kComplexScale, os.str());
        }
        return node.factor().real() * self(self, node.children().front());
    }
    return 0.0;
  };
  return go(go, root_);
}

double ObservableExpression::eval_real(const std::map<std::string, double>& leaf_values) const {
  std::vector<double> values;
  values.reserve(leaves_.size());
  for (const auto& l : leaves_) {
    const auto it = leaf_values.find(l.label());
    if (l.label().empty() || it == leaf_values.end()) {
      throw Error(ErrorCode::kMissingLeafValue, l.label().empty() ? "<unlabelled leaf>" : l.label());
    }
    values.push_back(it->second);
  }
  return eval_real(values);
}

// ---------------------------------------------------------------------------
// Peres-Mermin square

namespace {

using Grid = std::array<std::array<HermitianOperator, 3>, 3>;

HermitianOperator cell_op(char left, char right, std::size_t i, std::size_t j) {
  auto factor = [](char axis) { return axis == 'I' ? identity(2) : pauli(axis); };
  return tensor(factor(left), factor(right))
      .with_label("A" + std::to_string(i + 1) + std::to_string(j + 1));
}

Grid make_cells() {
  return {{
      {cell_op('I', 'X', 0, 0), cell_op('X', 'I', 0, 1), cell_op('X', 'X', 0, 2)},
      {cell_op('Y', 'I', 1, 0), cell_op('I', 'Y', 1, 1), cell_op('Y', 'Y', 1, 2)},
      {cell_op('Y', 'X', 2, 0), cell_op('X', 'Y', 2, 1), cell_op('Z', 'Z', 2, 2)},
  }};
}

HermitianOperator triple_product(const HermitianOperator& a, const HermitianOperator& b,
                                 const HermitianOperator& c, std::string label) {
  for (const auto& pair : {std::array{&a, &b}, std::array{&a, &c}, std::array{&b, &c}}) {
    if (!commutes(*pair[0], *pair[1], kLeafCommutationTol)) {
      throw Error(ErrorCode::kNonCommutingLeaves,
                  pair[0]->label() + " and " + pair[1]->label() + " in " + label);
    }
  }
  ComplexMatrix m = a.matrix() * b.matrix() * c.matrix();
  return HermitianOperator(std::move(m), std::move(label));
}

std::array<HermitianOperator, 3> make_rows(const Grid& g) {
  return {triple_product(g[0][0], g[0][1], g[0][2], "R1"),
          triple_product(g[1][0], g[1][1], g[1][2], "R2"),
          triple_product(g[2][0], g[2][1], g[2][2], "R3")};
}

std::array<HermitianOperator, 3> make_cols(const Grid& g) {
  return {triple_product(g[0][0], g[1][0], g[2][0], "C1"),
          triple_product(g[0][1], g[1][1], g[2][1], "C2"),
          triple_product(g[0][2], g[1][2], g[2][2], "C3")};
}

void require_identity_multiple(const HermitianOperator& op, double expected) {
  const auto s = scalar_multiple_of_identity(op, 1e-12);
  if (!s || std::abs(*s - expected) > 1e-12) {
    throw Error(ErrorCode::kPreconditionViolated, op.label() + " is not the expected multiple of I");
  }
}

}  // namespace

PeresMerminSquare::PeresMerminSquare()
    : cells_(make_cells()), rows_(make_rows(cells_)), cols_(make_cols(cells_)) {
  for (const auto& r : rows_) require_identity_multiple(r, 1.0);
  require_identity_multiple(cols_[0], 1.0);
  require_identity_multiple(cols_[1], 1.0);
  require_identity_multiple(cols_[2], -1.0);
}

ObservableExpression PeresMerminSquare::row_expression(std::size_t i) const {
  const auto& r = cells_.at(i);
  return ObservableExpression(product({leaf(r[0]), leaf(r[1]), leaf(r[2])}), rows_[i].label());
}

ObservableExpression PeresMerminSquare::column_expression(std::size_t j) const {
  return ObservableExpression(
      product({leaf(cells_[0].at(j)), leaf(cells_[1].at(j)), leaf(cells_[2].at(j))}),
      cols_[j].label());
}

PeresMerminSquare peres_mermin() { return PeresMerminSquare(); }

ImplicationsOperators implications_operators() {
  // Basis order |00>, |01>, |10>, |11>.
  auto diag = [](double a, double b, double c, double d, const char* label) {
    Eigen::VectorXcd v(4);
    v << a, b, c, d;
    return HermitianOperator(v.asDiagonal().toDenseMatrix(), label);
  };
  return {diag(1, 1, -1, -1, "B1"), diag(-1, -1, 1, 1, "B2"), diag(1, 2, 3, 4, "C")};
}

}  // namespace hvm
