#include "luq/qudit_state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace luq {

namespace {

constexpr double kImagTol = 1e-10;

Index total_dim(const std::vector<int>& dims) {
  if (dims.empty()) throw ShapeError("partition must name at least one party");
  Index n = 1;
  for (int d : dims) {
    if (d < 2) throw ShapeError("every local dimension must be >= 2");
    n *= d;
  }
  return n;
}

// Party 1 is the most significant factor: a composite index decomposes as
// i = ((i_1 d_2 + i_2) d_3 + i_3) ...
std::vector<Index> party_strides(const std::vector<int>& dims) {
  const int n = static_cast<int>(dims.size());
  std::vector<Index> s(n, 1);
  for (int p = n - 2; p >= 0; --p) s[p] = s[p + 1] * dims[p + 1];
  return s;
}

void decompose(Index flat, const std::vector<int>& dims,
               const std::vector<Index>& strides, std::vector<Index>& out) {
  for (std::size_t p = 0; p < dims.size(); ++p) {
    out[p] = flat / strides[p];
    flat %= strides[p];
  }
}

}  // namespace

GellMannBasis gell_mann_basis(int d) {
  if (d < 2) throw ShapeError("gell_mann_basis: local dimension must be >= 2");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  GellMannBasis basis;
  basis.d = d;
  basis.elems.reserve(static_cast<std::size_t>(d) * d - 1);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      basis.elems.push_back(std::move(m));
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(j, k) = Complex(0, -inv_sqrt2);
      m(k, j) = Complex(0, inv_sqrt2);
      basis.elems.push_back(std::move(m));
    }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const double scale = std::sqrt(1.0 / (static_cast<double>(l) * (l + 1)));
    for (int j = 0; j < l; ++j) m(j, j) = scale;
    m(l, l) = -static_cast<double>(l) * scale;
    basis.elems.push_back(std::move(m));
  }
  return basis;
}

DensityMatrix::DensityMatrix(std::vector<int> dims, ComplexMatrix mat)
    : dims_(std::move(dims)), mat_(std::move(mat)) {
  const Index D = total_dim(dims_);
  if (mat_.rows() != D || mat_.cols() != D)
    throw ShapeError("density matrix must be " + std::to_string(D) + "x" +
                     std::to_string(D) + " for the declared partition");
  const Residuals r = residuals(mat_);
  if (r.hermiticity > kHermitianTol)
    throw InvalidState("density matrix is not Hermitian: residual " +
                       std::to_string(r.hermiticity));
  if (r.trace > kTraceTol)
    throw InvalidState("density matrix trace is off by " +
                       std::to_string(r.trace));
  if (r.min_eigenvalue < -kPsdTol)
    throw InvalidState(
        "density matrix is not positive semidefinite: min eigenvalue " +
        std::to_string(r.min_eigenvalue));
}

DensityMatrix::Residuals DensityMatrix::residuals(const ComplexMatrix& mat) {
  Residuals r;
  r.hermiticity = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
  r.trace = std::abs(mat.trace() - Complex(1, 0));
  ComplexMatrix h = 0.5 * (mat + mat.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

const Hypermatrix& TensorRep::at(const std::vector<int>& subset) const {
  auto it = tensors.find(subset);
  if (it == tensors.end())
    throw IndexError("tensor representation has no such party subset");
  return it->second;
}

std::vector<std::vector<int>> party_subsets(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> s;
    for (int p = 0; p < n; ++p)
      if (mask & (1 << p)) s.push_back(p + 1);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> deltas(const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) out[i] = dims[i] * dims[i] - 1;
  return out;
}

TensorRep extract(const DensityMatrix& rho) {
  const std::vector<int>& dims = rho.dims();
  const int n = rho.parties();
  const Index D = rho.dim();
  const std::vector<Index> strides = party_strides(dims);
  const std::vector<int> dls = deltas(dims);

  std::vector<GellMannBasis> bases;
  bases.reserve(dims.size());
  for (int d : dims) bases.push_back(gell_mann_basis(d));

  TensorRep rep;
  rep.dims = dims;
  const ComplexMatrix& m = rho.matrix();
  std::vector<Index> iparts(n), jparts(n);

  for (const auto& subset : party_subsets(n)) {
    const int sz = static_cast<int>(subset.size());
    std::vector<Index> tdims(sz);
    for (int q = 0; q < sz; ++q) tdims[q] = dls[subset[q] - 1];
    Hypermatrix t{tdims};

    std::vector<Index> alpha(sz, 0);
    for (Index flat = 0; flat < t.size(); ++flat) {
      Complex val(0, 0);
      // Parties outside the subset carry identity factors, so only column
      // indices matching the row on those parties contribute.
      for (Index i = 0; i < D; ++i) {
        decompose(i, dims, strides, iparts);
        jparts = iparts;
        std::vector<Index> jsub(sz, 0);
        while (true) {
          Index j = 0;
          for (int q = 0; q < sz; ++q) jparts[subset[q] - 1] = jsub[q];
          for (int p = 0; p < n; ++p) j += jparts[p] * strides[p];
          Complex term = m(i, j);
          for (int q = 0; q < sz; ++q) {
            const int p = subset[q] - 1;
            term *= bases[p].elems[alpha[q]](jsub[q], iparts[p]);
          }
          val += term;
          int q = 0;
          for (; q < sz; ++q) {
            if (++jsub[q] < dims[subset[q] - 1]) break;
            jsub[q] = 0;
          }
          if (q == sz) break;
        }
      }
      if (std::abs(val.imag()) > kImagTol)
        throw InvalidState("extraction produced a non-real coefficient: " +
                           std::to_string(val.imag()));
      t.data()[flat] = val.real();
      for (int q = 0; q < sz; ++q) {  // first subset party fastest
        if (++alpha[q] < tdims[q]) break;
        alpha[q] = 0;
      }
    }
    rep.tensors.emplace(subset, std::move(t));
  }
  return rep;
}

DensityMatrix reconstruct(const TensorRep& rep) {
  const std::vector<int>& dims = rep.dims;
  const int n = rep.parties();
  const Index D = total_dim(dims);
  const std::vector<int> dls = deltas(dims);

  std::vector<GellMannBasis> bases;
  bases.reserve(dims.size());
  for (int d : dims) bases.push_back(gell_mann_basis(d));

  ComplexMatrix acc = ComplexMatrix::Identity(D, D);
  for (const auto& subset : party_subsets(n)) {
    const Hypermatrix& t = rep.at(subset);
    const int sz = static_cast<int>(subset.size());
    if (t.order() != sz)
      throw ShapeError("tensor order does not match its subset size");
    double subset_dim = 1;
    for (int q = 0; q < sz; ++q) {
      if (t.dim(q) != dls[subset[q] - 1])
        throw ShapeError("tensor shape does not match the partition");
      subset_dim *= dims[subset[q] - 1];
    }

    std::vector<Index> alpha(sz, 0);
    for (Index flat = 0; flat < t.size(); ++flat) {
      const double coef = subset_dim * t.data()[flat];
      if (coef != 0.0) {
        ComplexMatrix op = ComplexMatrix::Identity(1, 1);
        int q = 0;
        for (int p = 0; p < n; ++p) {
          if (q < sz && subset[q] - 1 == p) {
            op = kron(op, bases[p].elems[alpha[q]]);
            ++q;
          } else {
            op = kron(op, ComplexMatrix::Identity(dims[p], dims[p]));
          }
        }
        acc += coef * op;
      }
      for (int q = 0; q < sz; ++q) {
        if (++alpha[q] < t.dim(q)) break;
        alpha[q] = 0;
      }
    }
  }
  acc /= static_cast<double>(D);
  return {dims, std::move(acc)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, int party) {
  const std::vector<int>& dims = rho.dims();
  const int n = rho.parties();
  if (n < 2)
    throw ShapeError("partial_trace needs at least two parties");
  if (party < 1 || party > n)
    throw IndexError("partial_trace: party index out of range");
  const int p = party - 1;

  std::vector<int> rdims;
  for (int q = 0; q < n; ++q)
    if (q != p) rdims.push_back(dims[q]);
  const Index Dr = total_dim(rdims);
  const std::vector<Index> strides = party_strides(dims);
  const std::vector<Index> rstrides = party_strides(rdims);

  ComplexMatrix out = ComplexMatrix::Zero(Dr, Dr);
  const ComplexMatrix& m = rho.matrix();
  std::vector<Index> iparts(n), jparts(n);
  for (Index i = 0; i < Dr; ++i) {
    decompose(i, rdims, rstrides, iparts);
    for (Index j = 0; j < Dr; ++j) {
      decompose(j, rdims, rstrides, jparts);
      Complex val(0, 0);
      for (int b = 0; b < dims[p]; ++b) {
        Index fi = 0, fj = 0;
        int q = 0;
        for (int s = 0; s < n; ++s) {
          const Index ic = (s == p) ? b : iparts[q];
          const Index jc = (s == p) ? b : jparts[q];
          if (s != p) ++q;
          fi += ic * strides[s];
          fj += jc * strides[s];
        }
        val += m(fi, fj);
      }
      out(i, j) = val;
    }
  }
  return {std::move(rdims), std::move(out)};
}

DensityMatrix random_density(const std::vector<int>& dims,
                             std::uint64_t seed) {
  const Index D = total_dim(dims);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  ComplexMatrix g(D, D);
  for (Index i = 0; i < D; ++i)
    for (Index j = 0; j < D; ++j) {
      const double re = n01(gen);
      const double im = n01(gen);
      g(i, j) = Complex(re, im);
    }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return {dims, std::move(rho)};
}

}  // namespace luq
