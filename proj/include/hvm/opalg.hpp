#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hvm/error.hpp"

namespace hvm {

using cplx = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kOperatorEqualityTolerance = 1e-10;

/// A normalized ket. Construction fails unless ||v||_2 = 1 within 1e-12.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  /// Normalizes first; fails only on a (numerically) zero vector.
  static PureState normalized(const ComplexVector& v);

  const ComplexVector& vector() const noexcept { return amplitudes_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  cplx operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  /// |<this|other>|^2
  double overlap(const PureState& other) const;

  /// True when the states agree up to a global phase, i.e. 1 - |<a|b>| <= tol.
  bool equal_up_to_phase(const PureState& other, double tol = 1e-9) const;

 private:
  ComplexVector amplitudes_;
};

PureState basis_ket(std::size_t dim, std::size_t index);

/// Kronecker product of two kets.
PureState tensor(const PureState& a, const PureState& b);

class SpectralDecomposition;

namespace detail {
struct SpectrumCache;
}

/// Dense Hermitian matrix with an optional display label. The default-tolerance
/// spectral decomposition is computed on first use and shared between copies.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix matrix, std::string label = {});

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  HermitianOperator with_label(std::string label) const;

  /// Default grouping tolerance: 1e-9 * max(1, ||A||_F).
  double default_degeneracy_tolerance() const;

  const SpectralDecomposition& spectrum() const;

 private:
  ComplexMatrix matrix_;
  std::string label_;
  std::shared_ptr<detail::SpectrumCache> cache_;
};

struct SpectralBranch {
  double eigenvalue;
  ComplexMatrix projector;
  std::size_t rank;
};

/// Distinct eigenvalues in ascending order with their orthogonal projectors.
class SpectralDecomposition {
 public:
  SpectralDecomposition(std::vector<SpectralBranch> branches, std::size_t dim, double tolerance);

  const std::vector<SpectralBranch>& branches() const noexcept { return branches_; }
  std::size_t size() const noexcept { return branches_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  double tolerance() const noexcept { return tolerance_; }

  /// Index of the branch whose eigenvalue lies within the grouping tolerance of `value`.
  std::optional<std::size_t> find_branch(double value) const;

  /// Sum of eigenvalue * projector.
  ComplexMatrix reconstruct() const;

 private:
  std::vector<SpectralBranch> branches_;
  std::size_t dim_;
  double tolerance_;
};

HermitianOperator identity(std::size_t dim);

enum class PauliAxis { X, Y, Z };

HermitianOperator pauli(PauliAxis axis);
HermitianOperator pauli(char axis);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// ||ab - ba||_F <= tol.
bool commutes(const HermitianOperator& a, const HermitianOperator& b,
              double tol = kOperatorEqualityTolerance);

/// Label identity when both carry labels, otherwise Frobenius distance <= 1e-10.
bool same_operator(const HermitianOperator& a, const HermitianOperator& b);

/// Eigenvalues closer than `degeneracy_tol` are grouped into one branch; a
/// negative tolerance selects the operator's default.
SpectralDecomposition spectral(const HermitianOperator& a, double degeneracy_tol = -1.0);

/// If `a` equals s * I within tol (Frobenius), returns s.
std::optional<double> scalar_multiple_of_identity(const HermitianOperator& a, double tol = 1e-12);

}  // namespace hvm
