#include "hvm/random.hpp"

#include <cmath>
#include <numbers>

namespace hvm {

double Rng::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      m(i, j) = cplx(re, im);
    }
  }
  return m;
}

}  // namespace

PureState random_state(std::size_t dim, Rng& rng) {
  return PureState::normalized(ginibre(dim, 1, rng).col(0));
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  const ComplexMatrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const cplx d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

HermitianOperator hermitian_with_spectrum(const std::vector<double>& eigenvalues, Rng& rng) {
  const ComplexMatrix u = random_unitary(eigenvalues.size(), rng);
  Eigen::VectorXcd d(static_cast<Eigen::Index>(eigenvalues.size()));
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) d(static_cast<Eigen::Index>(k)) = eigenvalues[k];
  ComplexMatrix m = u * d.asDiagonal() * u.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return HermitianOperator(std::move(m));
}

HermitianOperator random_observable(std::size_t dim, Rng& rng) {
  std::vector<double> values(dim);
  for (auto& v : values) v = static_cast<double>(static_cast<int>(rng.next_u64() % 5) - 2);
  return hermitian_with_spectrum(values, rng);
}

CommutingFamily random_commuting_family(std::size_t dim, std::size_t count, Rng& rng) {
  CommutingFamily family;
  family.basis = random_unitary(dim, rng);
  for (std::size_t k = 0; k < count; ++k) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      d(i) = static_cast<double>(static_cast<int>(rng.next_u64() % 5) - 2);
    }
    ComplexMatrix m = family.basis * d.asDiagonal() * family.basis.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    family.operators.emplace_back(std::move(m), "B" + std::to_string(k + 1));
  }
  return family;
}

}  // namespace hvm
