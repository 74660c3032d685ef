#include "luq/hypermatrix.hpp"

#include <string>
#include <utility>

namespace luq {

namespace {

Index checked_size(const std::vector<Index>& dims) {
  if (dims.empty()) throw ShapeError("hypermatrix order must be >= 1");
  Index n = 1;
  for (Index d : dims) {
    if (d < 1) throw ShapeError("hypermatrix dimensions must be positive");
    n *= d;
  }
  return n;
}

template <class Matrix>
Matrix kron_impl(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Hypermatrix::Hypermatrix(std::vector<Index> dims) : dims_(std::move(dims)) {
  data_ = RealVector::Zero(checked_size(dims_));
}

Hypermatrix::Hypermatrix(std::vector<Index> dims, RealVector data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (data_.size() != checked_size(dims_))
    throw ShapeError("hypermatrix data length does not match its dimensions");
}

Hypermatrix::Hypermatrix(const RealVector& v) : dims_{v.size()}, data_(v) {
  checked_size(dims_);
}

Hypermatrix::Hypermatrix(const RealMatrix& m) : dims_{m.rows(), m.cols()} {
  checked_size(dims_);
  data_ = Eigen::Map<const RealVector>(m.data(), m.size());
}

Index Hypermatrix::dim(int mode0) const {
  if (mode0 < 0 || mode0 >= order())
    throw IndexError("hypermatrix mode out of range");
  return dims_[static_cast<std::size_t>(mode0)];
}

Index Hypermatrix::offset(const std::vector<Index>& idx) const {
  if (static_cast<int>(idx.size()) != order())
    throw IndexError("multi-index length does not match hypermatrix order");
  Index off = 0;
  Index stride = 1;
  for (int l = 0; l < order(); ++l) {
    if (idx[l] < 0 || idx[l] >= dims_[l])
      throw IndexError("multi-index component out of range");
    off += idx[l] * stride;
    stride *= dims_[l];
  }
  return off;
}

RealVector Hypermatrix::as_vector() const {
  if (order() != 1) throw ShapeError("as_vector requires an order-1 value");
  return data_;
}

RealMatrix Hypermatrix::as_matrix() const {
  if (order() == 1)
    return Eigen::Map<const RealMatrix>(data_.data(), dims_[0], 1);
  if (order() == 2)
    return Eigen::Map<const RealMatrix>(data_.data(), dims_[0], dims_[1]);
  throw ShapeError("as_matrix requires an order-1 or order-2 value");
}

Hypermatrix outer_product(const Hypermatrix& a, const Hypermatrix& b) {
  std::vector<Index> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  RealVector data(a.size() * b.size());
  for (Index j = 0; j < b.size(); ++j)
    data.segment(j * a.size(), a.size()) = b.data()[j] * a.data();
  return {std::move(dims), std::move(data)};
}

RealMatrix unfold(const Hypermatrix& a, int mode) {
  const int d = a.order();
  if (mode < 1 || mode > d) throw IndexError("unfold: mode out of range");
  const int k = mode - 1;
  const auto& dims = a.dims();
  const Index rows = dims[k];
  const Index cols = a.size() / rows;
  if (k == 0)  // contiguous: the flat array reshaped
    return Eigen::Map<const RealMatrix>(a.data().data(), rows, cols);

  std::vector<Index> col_stride(d, 0);
  Index s = 1;
  for (int l = 0; l < d; ++l) {
    if (l == k) continue;
    col_stride[l] = s;
    s *= dims[l];
  }
  RealMatrix out(rows, cols);
  std::vector<Index> idx(d, 0);
  const RealVector& v = a.data();
  for (Index flat = 0; flat < v.size(); ++flat) {
    Index col = 0;
    for (int l = 0; l < d; ++l)
      if (l != k) col += idx[l] * col_stride[l];
    out(idx[k], col) = v[flat];
    for (int l = 0; l < d; ++l) {  // first index fastest
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
  return out;
}

Hypermatrix fold(const RealMatrix& m, std::vector<Index> dims, int mode) {
  const int d = static_cast<int>(dims.size());
  if (mode < 1 || mode > d) throw IndexError("fold: mode out of range");
  const int k = mode - 1;
  const Index total = checked_size(dims);
  if (m.rows() != dims[k] || m.cols() != total / dims[k])
    throw ShapeError("fold: matrix shape does not match the target dims");
  if (k == 0)
    return {std::move(dims),
            Eigen::Map<const RealVector>(m.data(), m.size())};

  std::vector<Index> col_stride(d, 0);
  Index s = 1;
  for (int l = 0; l < d; ++l) {
    if (l == k) continue;
    col_stride[l] = s;
    s *= dims[l];
  }
  RealVector data(total);
  std::vector<Index> idx(d, 0);
  for (Index flat = 0; flat < total; ++flat) {
    Index col = 0;
    for (int l = 0; l < d; ++l)
      if (l != k) col += idx[l] * col_stride[l];
    data[flat] = m(idx[k], col);
    for (int l = 0; l < d; ++l) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
  return {std::move(dims), std::move(data)};
}

Hypermatrix multilinear_mult(const std::vector<RealMatrix>& mats,
                             const Hypermatrix& a) {
  if (static_cast<int>(mats.size()) != a.order())
    throw ShapeError(
        "multilinear_mult: need exactly one matrix per tensor mode");
  for (int k = 0; k < a.order(); ++k)
    if (mats[k].cols() != a.dim(k))
      throw ShapeError("multilinear_mult: matrix for mode " +
                       std::to_string(k + 1) + " has " +
                       std::to_string(mats[k].cols()) +
                       " columns, tensor dimension is " +
                       std::to_string(a.dim(k)));
  Hypermatrix cur = a;
  for (int k = 0; k < a.order(); ++k) {
    RealMatrix prod = mats[k] * unfold(cur, k + 1);
    std::vector<Index> nd = cur.dims();
    nd[k] = mats[k].rows();
    cur = fold(prod, std::move(nd), k + 1);
  }
  return cur;
}

RealVector vec(const RealMatrix& m) {
  return Eigen::Map<const RealVector>(m.data(), m.size());
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  return kron_impl(a, b);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return kron_impl(a, b);
}

}  // namespace luq
