#include "luq/lu_action.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <utility>

namespace luq {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kImagTol = 1e-10;

void check_unitary(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw NotUnitaryError("matrix is not square");
  const Index d = u.rows();
  const double res =
      (u.adjoint() * u - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (res > kUnitaryTol)
    throw NotUnitaryError("matrix is not unitary: residual " +
                          std::to_string(res));
}

}  // namespace

DensityMatrix conjugate_local(const DensityMatrix& rho,
                              const LocalUnitaries& u) {
  if (u.dims != rho.dims())
    throw ShapeError("local unitaries declared for a different partition");
  if (u.us.size() != rho.dims().size())
    throw ShapeError("need exactly one unitary per party");
  ComplexMatrix full = ComplexMatrix::Identity(1, 1);
  for (std::size_t p = 0; p < u.us.size(); ++p) {
    if (u.us[p].rows() != rho.dims()[p] || u.us[p].cols() != rho.dims()[p])
      throw ShapeError("unitary for party " + std::to_string(p + 1) +
                       " has the wrong size");
    check_unitary(u.us[p]);
    full = kron(full, u.us[p]);
  }
  ComplexMatrix out = full * rho.matrix() * full.adjoint();
  return {rho.dims(), std::move(out)};
}

RealMatrix induced_orthogonal(const ComplexMatrix& u,
                              const GellMannBasis& basis) {
  check_unitary(u);
  if (u.rows() != basis.d)
    throw ShapeError("basis dimension does not match the unitary");
  const int delta = static_cast<int>(basis.elems.size());
  RealMatrix x(delta, delta);
  for (int i = 0; i < delta; ++i) {
    const ComplexMatrix conj = u * basis.elems[i] * u.adjoint();
    for (int j = 0; j < delta; ++j) {
      const Complex val = (conj * basis.elems[j]).trace();
      if (std::abs(val.imag()) > kImagTol)
        throw InvalidState("induced coefficient is not real");
      x(i, j) = val.real();
    }
  }
  return x.transpose();
}

InducedOrthogonals induced_orthogonals(const LocalUnitaries& u) {
  InducedOrthogonals out;
  out.os.reserve(u.us.size());
  for (std::size_t p = 0; p < u.us.size(); ++p)
    out.os.push_back(induced_orthogonal(u.us[p], gell_mann_basis(u.dims[p])));
  return out;
}

TensorRep push_forward(const TensorRep& rep, const InducedOrthogonals& os) {
  if (os.os.size() != rep.dims.size())
    throw ShapeError("need exactly one orthogonal matrix per party");
  const std::vector<int> dls = deltas(rep.dims);
  for (std::size_t p = 0; p < os.os.size(); ++p)
    if (os.os[p].rows() != dls[p] || os.os[p].cols() != dls[p])
      throw ShapeError("orthogonal matrix for party " + std::to_string(p + 1) +
                       " has the wrong size");
  TensorRep out;
  out.dims = rep.dims;
  for (const auto& [subset, tensor] : rep.tensors) {
    std::vector<RealMatrix> mats;
    mats.reserve(subset.size());
    for (int party : subset) mats.push_back(os.os[party - 1]);
    out.tensors.emplace(subset, multilinear_mult(mats, tensor));
  }
  return out;
}

ComplexMatrix random_special_unitary(int d, std::uint64_t seed) {
  if (d < 2) throw ShapeError("random_special_unitary: dimension must be >= 2");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double re = n01(gen);
      const double im = n01(gen);
      g(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rj = r(j, j);
    const double mag = std::abs(rj);
    q.col(j) *= (mag > 0) ? rj / mag : Complex(1, 0);
  }
  const Complex det = q.determinant();
  q /= std::pow(det, 1.0 / d);  // principal d-th root, deterministic
  return q;
}

RealMatrix random_orthogonal(int n, std::uint64_t seed, bool special) {
  if (n < 1) throw ShapeError("random_orthogonal: dimension must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  RealMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = n01(gen);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (special && q.determinant() < 0) q.col(n - 1) *= -1.0;
  return q;
}

}  // namespace luq
