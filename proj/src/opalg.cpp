#include "hvm/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

namespace hvm {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kNotNormalized: return "state not normalized";
    case ErrorCode::kNotHermitian: return "operator not Hermitian";
    case ErrorCode::kEigensolverFailure: return "eigensolver failure";
    case ErrorCode::kMalformedDecomposition: return "malformed decomposition";
    case ErrorCode::kNotABranch: return "value is not an eigenvalue branch";
    case ErrorCode::kZeroProbabilityBranch: return "zero-probability branch";
    case ErrorCode::kNonCommutingLeaves: return "non-commuting leaves";
    case ErrorCode::kMissingLeafValue: return "missing leaf value";
    case ErrorCode::kComplexScale: return "complex scale in real evaluation";
    case ErrorCode::kPreconditionViolated: return "precondition violated";
    case ErrorCode::kScriptExhausted: return "hidden-variable script exhausted";
  }
  return "unknown error";
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "state dimension must be at least 1");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "norm is " << norm;
    throw Error(ErrorCode::kNotNormalized, os.str());
  }
}

PureState PureState::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 1e-300)) {
    throw Error(ErrorCode::kNotNormalized, "cannot normalize a zero vector");
  }
  return PureState(v / norm);
}

double PureState::overlap(const PureState& other) const {
  if (other.dim() != dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "overlap of states with different dimensions");
  }
  return std::norm(amplitudes_.dot(other.amplitudes_));
}

bool PureState::equal_up_to_phase(const PureState& other, double tol) const {
  if (other.dim() != dim()) return false;
  return 1.0 - std::abs(amplitudes_.dot(other.amplitudes_)) <= tol;
}

PureState basis_ket(std::size_t dim, std::size_t index) {
  if (dim < 1 || index >= dim) {
    std::ostringstream os;
    os << "basis index " << index << " out of range for dimension " << dim;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v));
}

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

PureState tensor(const PureState& a, const PureState& b) {
  ComplexVector v = kron(a.vector(), b.vector());
  return PureState::normalized(v);
}

// ---------------------------------------------------------------------------
// HermitianOperator

namespace detail {
struct SpectrumCache {
  std::once_flag once;
  std::optional<SpectralDecomposition> value;
};
}  // namespace detail

HermitianOperator::HermitianOperator(ComplexMatrix matrix, std::string label)
    : matrix_(std::move(matrix)),
      label_(std::move(label)),
      cache_(std::make_shared<detail::SpectrumCache>()) {
  if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "operator must be a non-empty square matrix");
  }
  const ComplexMatrix diff = matrix_ - matrix_.adjoint();
  if (diff.cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw Error(ErrorCode::kNotHermitian,
                label_.empty() ? std::string("matrix differs from its adjoint") : label_);
  }
}

HermitianOperator HermitianOperator::with_label(std::string label) const {
  HermitianOperator out = *this;
  out.label_ = std::move(label);
  return out;
}

double HermitianOperator::default_degeneracy_tolerance() const {
  return 1e-9 * std::max(1.0, matrix_.norm());
}

const SpectralDecomposition& HermitianOperator::spectrum() const {
  std::call_once(cache_->once, [this] { cache_->value.emplace(spectral(*this)); });
  return *cache_->value;
}

HermitianOperator identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(ComplexMatrix::Identity(n, n), dim == 2 ? "I" : "I" + std::to_string(dim));
}

HermitianOperator pauli(PauliAxis axis) {
  const cplx i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  switch (axis) {
    case PauliAxis::X:
      m << 0.0, 1.0, 1.0, 0.0;
      return HermitianOperator(m, "X");
    case PauliAxis::Y:
      m << 0.0, -i, i, 0.0;
      return HermitianOperator(m, "Y");
    case PauliAxis::Z:
      m << 1.0, 0.0, 0.0, -1.0;
      return HermitianOperator(m, "Z");
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown Pauli axis");
}

HermitianOperator pauli(char axis) {
  switch (axis) {
    case 'x': case 'X': return pauli(PauliAxis::X);
    case 'y': case 'Y': return pauli(PauliAxis::Y);
    case 'z': case 'Z': return pauli(PauliAxis::Z);
    default: break;
  }
  throw Error(ErrorCode::kInvalidArgument, std::string("unknown Pauli axis '") + axis + "'");
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  std::string label;
  if (!a.label().empty() && !b.label().empty()) label = a.label() + b.label();
  return HermitianOperator(kron(a.matrix(), b.matrix()), std::move(label));
}

bool commutes(const HermitianOperator& a, const HermitianOperator& b, double tol) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "commutator of operators with different dimensions");
  }
  const ComplexMatrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return comm.norm() <= tol;
}

bool same_operator(const HermitianOperator& a, const HermitianOperator& b) {
  if (!a.label().empty() && !b.label().empty()) return a.label() == b.label();
  if (a.dim() != b.dim()) return false;
  return (a.matrix() - b.matrix()).norm() <= kOperatorEqualityTolerance;
}

std::optional<double> scalar_multiple_of_identity(const HermitianOperator& a, double tol) {
  const double s = a.matrix().trace().real() / static_cast<double>(a.dim());
  const auto n = static_cast<Eigen::Index>(a.dim());
  if ((a.matrix() - s * ComplexMatrix::Identity(n, n)).norm() > tol) return std::nullopt;
  return s;
}

// ---------------------------------------------------------------------------
// Spectral decomposition

SpectralDecomposition::SpectralDecomposition(std::vector<SpectralBranch> branches,
                                             std::size_t dim, double tolerance)
    : branches_(std::move(branches)), dim_(dim), tolerance_(tolerance) {
  for (std::size_t k = 1; k < branches_.size(); ++k) {
    if (!(branches_[k].eigenvalue - branches_[k - 1].eigenvalue > tolerance_)) {
      throw Error(ErrorCode::kMalformedDecomposition,
                  "eigenvalues must be strictly increasing beyond the grouping tolerance");
    }
  }
}

std::optional<std::size_t> SpectralDecomposition::find_branch(double value) const {
  for (std::size_t k = 0; k < branches_.size(); ++k) {
    if (std::abs(branches_[k].eigenvalue - value) <= tolerance_) return k;
  }
  return std::nullopt;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& b : branches_) out += b.eigenvalue * b.projector;
  return out;
}

SpectralDecomposition spectral(const HermitianOperator& a, double degeneracy_tol) {
  const double tol = degeneracy_tol < 0.0 ? a.default_degeneracy_tolerance() : degeneracy_tol;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigensolverFailure,
                a.label().empty() ? std::string("no convergence") : a.label());
  }
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const ComplexMatrix& vectors = solver.eigenvectors();
  const Eigen::Index n = values.size();
  const double snap = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, a.matrix().norm());

  std::vector<SpectralBranch> branches;
  Eigen::Index start = 0;
  while (start < n) {
    // Chain consecutive eigenvalues whose gap is within tol.
    Eigen::Index end = start + 1;
    while (end < n && values(end) - values(end - 1) <= tol) ++end;
    const Eigen::Index count = end - start;
    const auto block = vectors.middleCols(start, count);
    SpectralBranch branch;
    branch.eigenvalue = values.segment(start, count).mean();
    // Round-off on integer spectra (Pauli products) would otherwise leak into reported values.
    if (std::abs(branch.eigenvalue - std::round(branch.eigenvalue)) <= snap) {
      branch.eigenvalue = std::round(branch.eigenvalue);
    }
    branch.projector = block * block.adjoint();
    branch.rank = static_cast<std::size_t>(count);
    branches.push_back(std::move(branch));
    start = end;
  }
  return SpectralDecomposition(std::move(branches), a.dim(), tol);
}

}  // namespace hvm
