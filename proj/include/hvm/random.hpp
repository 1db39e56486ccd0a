#pragma once

#include <cstddef>
#include <vector>

#include "hvm/opalg.hpp"
#include "hvm/rng.hpp"

namespace hvm {

/// Haar-random pure state (normalized complex Gaussian vector).
PureState random_state(std::size_t dim, Rng& rng);

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix
/// with the phase of R's diagonal absorbed.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

/// U diag(eigenvalues) U^dagger for a Haar-random U.
HermitianOperator hermitian_with_spectrum(const std::vector<double>& eigenvalues, Rng& rng);

/// Random observable on `dim` levels with small-integer eigenvalues, so
/// degeneracies occur regularly.
HermitianOperator random_observable(std::size_t dim, Rng& rng);

/// Two observables diagonal in one shared random eigenbasis, hence commuting.
struct CommutingFamily {
  ComplexMatrix basis;  // columns are the common eigenvectors
  std::vector<HermitianOperator> operators;
};

CommutingFamily random_commuting_family(std::size_t dim, std::size_t count, Rng& rng);

}  // namespace hvm
