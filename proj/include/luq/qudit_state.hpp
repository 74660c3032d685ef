#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "luq/hypermatrix.hpp"

namespace luq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Hilbert-Schmidt orthonormal basis of the traceless Hermitian d x d
/// matrices: Tr(l_i l_j) = delta_ij.  Canonical order: symmetric pairs
/// (E_jk + E_kj)/sqrt(2) with (j,k) lexicographic, then antisymmetric pairs
/// -i(E_jk - E_kj)/sqrt(2), then the d-1 diagonal elements.  For d = 2 this
/// is {sigma_x, sigma_y, sigma_z} / sqrt(2).
struct GellMannBasis {
  int d = 0;
  std::vector<ComplexMatrix> elems;  // d*d - 1 elements
};

GellMannBasis gell_mann_basis(int d);

/// A multipartite density matrix: Hermitian, unit trace, positive
/// semidefinite (up to small numerical tolerances), with a declared
/// partition (d_1, ..., d_N).  Party 1 is the most significant tensor factor.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPsdTol = 1e-9;

  DensityMatrix(std::vector<int> dims, ComplexMatrix mat);

  const std::vector<int>& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  Index dim() const { return mat_.rows(); }  // D = prod d_k
  const ComplexMatrix& matrix() const { return mat_; }

  struct Residuals {
    double hermiticity = 0;  // max |rho - rho^dagger|
    double trace = 0;        // |Tr rho - 1|
    double min_eigenvalue = 0;
  };
  static Residuals residuals(const ComplexMatrix& mat);

 private:
  std::vector<int> dims_;
  ComplexMatrix mat_;
};

/// Hypermatrix representation of a state: one real tensor per nonempty
/// subset of parties, keyed by the ascending 1-based party list.  The tensor
/// for subset {j_1 < ... < j_M} has dims (delta_{j_1}, ..., delta_{j_M}) with
/// delta_k = d_k^2 - 1.
struct TensorRep {
  std::vector<int> dims;
  std::map<std::vector<int>, Hypermatrix> tensors;

  int parties() const { return static_cast<int>(dims.size()); }
  const Hypermatrix& at(const std::vector<int>& subset) const;
};

/// All nonempty subsets of {1, ..., n}, each ascending, in a deterministic
/// order (sorted by the ascending party lists).
std::vector<std::vector<int>> party_subsets(int n);

std::vector<int> deltas(const std::vector<int>& dims);

/// Correlation-tensor extraction: T_S^alpha = Tr(rho * prod_{k in S}
/// l_{alpha_k}^{(k)}) with each basis element embedded by identity factors on
/// the other parties.  The coefficients are real; the imaginary residue is
/// checked against 1e-10 and discarded.
TensorRep extract(const DensityMatrix& rho);

/// Inverse of extract: rho = (1/D) (I + sum_S prod_{k in S} d_k *
/// sum_alpha T_S^alpha l_alpha^{(S)}).  The subset factor prod d_k makes
/// extract(reconstruct(rep)) == rep exact for the orthonormal basis.
DensityMatrix reconstruct(const TensorRep& rep);

/// Trace out one party (1-based); the result lives on the remaining parties.
DensityMatrix partial_trace(const DensityMatrix& rho, int party);

/// Seeded random state: rho = G G^dagger / Tr(G G^dagger) with G a complex
/// Gaussian D x D matrix.  Deterministic per seed.
DensityMatrix random_density(const std::vector<int>& dims, std::uint64_t seed);

}  // namespace luq
