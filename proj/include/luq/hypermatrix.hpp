#pragma once

#include <Eigen/Dense>
#include <vector>

#include "luq/errors.hpp"

namespace luq {

using Index = Eigen::Index;
using RealMatrix = Eigen::MatrixXd;  // column-major flat storage
using RealVector = Eigen::VectorXd;

/// Dense real hypermatrix of order >= 1 with an explicit dimension vector.
///
/// Storage is generalized column-major: the first index varies fastest, so a
/// multi-index (i_1, ..., i_d) with 0 <= i_l < n_l sits at flat offset
/// sum_l i_l * prod_{m<l} n_m.  With this layout vec() of a matrix and the
/// mode-1 unfolding read the flat array unchanged, which keeps the
/// vectorization identities exact at the representation level.
///
/// All operations return fresh values; there are no in-place variants.
class Hypermatrix {
 public:
  explicit Hypermatrix(std::vector<Index> dims);
  Hypermatrix(std::vector<Index> dims, RealVector data);

  // A real vector is an order-1 hypermatrix and a real matrix an order-2 one;
  // the implicit conversions make the two views interchangeable.
  Hypermatrix(const RealVector& v);  // NOLINT(google-explicit-constructor)
  Hypermatrix(const RealMatrix& m);  // NOLINT(google-explicit-constructor)

  int order() const { return static_cast<int>(dims_.size()); }
  const std::vector<Index>& dims() const { return dims_; }
  Index dim(int mode0) const;  // 0-based mode
  Index size() const { return data_.size(); }

  double at(const std::vector<Index>& idx) const { return data_[offset(idx)]; }
  double& at(const std::vector<Index>& idx) { return data_[offset(idx)]; }

  template <class... Ix>
  double operator()(Ix... ix) const {
    return data_[offset(std::vector<Index>{static_cast<Index>(ix)...})];
  }

  const RealVector& data() const { return data_; }
  RealVector& data() { return data_; }

  RealVector as_vector() const;  // order 1 only
  RealMatrix as_matrix() const;  // order 2 (an order-1 value maps to a column)

  double norm() const { return data_.norm(); }
  bool same_shape(const Hypermatrix& o) const { return dims_ == o.dims_; }

  /// Flat offset of a full multi-index, bounds-checked.
  Index offset(const std::vector<Index>& idx) const;

 private:
  std::vector<Index> dims_;
  RealVector data_;
};

/// Outer product: dims(a) ++ dims(b), entry (i...,j...) = a(i...) * b(j...).
Hypermatrix outer_product(const Hypermatrix& a, const Hypermatrix& b);

/// Multilinear matrix multiplication (X_1, ..., X_d) * A: simultaneous change
/// of basis in every mode.  Requires cols(mats[k]) == dims(a)[k] for all k.
Hypermatrix multilinear_mult(const std::vector<RealMatrix>& mats,
                             const Hypermatrix& a);

/// Mode-k unfolding, k 1-based as in the usual T_(k) notation: the
/// n_k x prod_{l != k} n_l matrix whose columns stack the remaining modes in
/// increasing order, lowest mode fastest.
RealMatrix unfold(const Hypermatrix& a, int mode);

/// Inverse of unfold for the given target shape.
Hypermatrix fold(const RealMatrix& m, std::vector<Index> dims, int mode);

/// Column-stacking vectorization: [m_11 m_21 ... m_m1 m_12 ... m_mn]^t.
RealVector vec(const RealMatrix& m);

/// Kronecker product, block (i,j) = a_ij * B.
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace luq
