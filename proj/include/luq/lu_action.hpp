#pragma once

#include <cstdint>
#include <vector>

#include "luq/qudit_state.hpp"

namespace luq {

/// One unitary per party, each d_k x d_k.
struct LocalUnitaries {
  std::vector<int> dims;
  std::vector<ComplexMatrix> us;
};

/// The orthogonal matrices a tuple of local unitaries induces on the
/// correlation tensors, one delta_k x delta_k matrix per party.
struct InducedOrthogonals {
  std::vector<RealMatrix> os;
};

/// (U_1 x ... x U_N) rho (U_1 x ... x U_N)^dagger.
DensityMatrix conjugate_local(const DensityMatrix& rho,
                              const LocalUnitaries& u);

/// The orthogonal matrix O with extract(U rho U^dagger) = O * extract(rho)
/// on a single party: O = X^t where X_ij = Tr(U l_i U^dagger l_j).  The
/// transpose is load-bearing; the equivariance property test pins it.
RealMatrix induced_orthogonal(const ComplexMatrix& u,
                              const GellMannBasis& basis);

InducedOrthogonals induced_orthogonals(const LocalUnitaries& u);

/// Applies (O_{j_1}, ..., O_{j_M}) * T_S to every subset tensor.
TensorRep push_forward(const TensorRep& rep, const InducedOrthogonals& os);

/// Haar-distributed special unitary: QR of a seeded complex Gaussian with
/// the phases of R's diagonal absorbed, then divided by the principal d-th
/// root of the determinant so det = 1.  Deterministic per seed.
ComplexMatrix random_special_unitary(int d, std::uint64_t seed);

/// Haar-distributed orthogonal matrix via QR of a seeded real Gaussian with
/// sign correction; with `special`, one column is flipped when det = -1.
RealMatrix random_orthogonal(int n, std::uint64_t seed, bool special);

}  // namespace luq
