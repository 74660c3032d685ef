#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "luq/hypermatrix.hpp"
#include "luq/lu_action.hpp"

using namespace luq;

namespace {

RealMatrix random_matrix(Index r, Index c, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = u(g);
  return m;
}

Hypermatrix random_tensor(const std::vector<Index>& dims, std::mt19937_64& g) {
  Hypermatrix t{dims};
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Index i = 0; i < t.size(); ++i) t.data()[i] = u(g);
  return t;
}

double max_abs_diff(const Hypermatrix& a, const Hypermatrix& b) {
  REQUIRE(a.same_shape(b));
  return (a.data() - b.data()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return (a - b).cwiseAbs().maxCoeff();
}

// Independent oracle: multilinear multiplication straight from the defining
// sum, no unfoldings involved.
Hypermatrix multilinear_oracle(const std::vector<RealMatrix>& mats,
                               const Hypermatrix& a) {
  std::vector<Index> odims(mats.size());
  for (std::size_t k = 0; k < mats.size(); ++k) odims[k] = mats[k].rows();
  Hypermatrix out{odims};
  const int d = a.order();
  std::vector<Index> oi(d, 0), ji(d, 0);
  for (Index of = 0; of < out.size(); ++of) {
    double sum = 0;
    std::fill(ji.begin(), ji.end(), 0);
    while (true) {
      double term = a.at(ji);
      for (int k = 0; k < d; ++k) term *= mats[k](oi[k], ji[k]);
      sum += term;
      int k = 0;
      for (; k < d; ++k) {
        if (++ji[k] < a.dims()[k]) break;
        ji[k] = 0;
      }
      if (k == d) break;
    }
    out.at(oi) = sum;
    int k = 0;
    for (; k < d; ++k) {
      if (++oi[k] < odims[k]) break;
      oi[k] = 0;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("outer product: zero factor gives a zero tensor") {
  std::mt19937_64 g(1);
  const Hypermatrix zero{std::vector<Index>{2, 3}};
  const Hypermatrix b = random_tensor({2, 2}, g);
  const Hypermatrix prod = outer_product(zero, b);
  CHECK(prod.dims() == std::vector<Index>{2, 3, 2, 2});
  CHECK(prod.data().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("outer product of basis vectors") {
  RealVector v = RealVector::Zero(3);
  v[0] = 1.0;
  const Hypermatrix prod = outer_product(v, v);
  CHECK(prod.dims() == std::vector<Index>{3, 3});
  CHECK(prod(0, 0) == 1.0);
  CHECK(prod.data().sum() == 1.0);
}

TEST_CASE("outer product against the defining triple loop") {
  RealVector v(2);
  v << 1, 2;
  RealMatrix m(2, 2);
  m << 3, 4, 5, 6;
  const Hypermatrix prod = outer_product(v, m);
  REQUIRE(prod.dims() == std::vector<Index>{2, 2, 2});
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 2; ++k)
        CHECK(prod(i, j, k) == v[i] * m(j, k));
}

TEST_CASE("multilinear mult: identity tuple is a no-op") {
  std::mt19937_64 g(2);
  const Hypermatrix t = random_tensor({2, 3, 4}, g);
  const std::vector<RealMatrix> eye{RealMatrix::Identity(2, 2),
                                    RealMatrix::Identity(3, 3),
                                    RealMatrix::Identity(4, 4)};
  CHECK(max_abs_diff(multilinear_mult(eye, t), t) == 0.0);
}

TEST_CASE("multilinear mult: zero tuple gives zero") {
  std::mt19937_64 g(3);
  const Hypermatrix t = random_tensor({3, 2}, g);
  const std::vector<RealMatrix> zeros{RealMatrix::Zero(3, 3),
                                      RealMatrix::Zero(2, 2)};
  CHECK(multilinear_mult(zeros, t).data().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("multilinear mult on a matrix is O1 * T * O2^t") {
  std::mt19937_64 g(4);
  const RealMatrix o1 = random_orthogonal(3, 11, false);
  const RealMatrix o2 = random_orthogonal(3, 12, false);
  const RealMatrix t = random_matrix(3, 3, g);
  const Hypermatrix got = multilinear_mult({o1, o2}, Hypermatrix(t));
  const RealMatrix expect = o1 * t * o2.transpose();
  CHECK(max_abs_diff(got.as_matrix(), expect) < 1e-12);
}

TEST_CASE("multilinear mult against the defining sum") {
  std::mt19937_64 g(5);
  const Hypermatrix t = random_tensor({2, 3, 2}, g);
  const std::vector<RealMatrix> mats{random_matrix(4, 2, g),
                                     random_matrix(2, 3, g),
                                     random_matrix(3, 2, g)};
  CHECK(max_abs_diff(multilinear_mult(mats, t), multilinear_oracle(mats, t)) <
        1e-12);
}

TEST_CASE("multilinear mult rejects shape mismatches") {
  std::mt19937_64 g(6);
  const Hypermatrix t = random_tensor({2, 3}, g);
  CHECK_THROWS_AS(multilinear_mult({RealMatrix::Identity(2, 2)}, t),
                  ShapeError);
  CHECK_THROWS_AS(multilinear_mult(
                      {RealMatrix::Identity(2, 2), RealMatrix::Identity(2, 2)},
                      t),
                  ShapeError);
}

TEST_CASE("bilinearity in the tensor and in each matrix slot") {
  std::mt19937_64 g(7);
  for (int it = 0; it < 20; ++it) {
    const Hypermatrix a = random_tensor({2, 3, 2}, g);
    const Hypermatrix b = random_tensor({2, 3, 2}, g);
    std::vector<RealMatrix> xs{random_matrix(3, 2, g), random_matrix(2, 3, g),
                               random_matrix(2, 2, g)};
    const double al = 0.7, be = -1.3;

    Hypermatrix mix{a.dims(), al * a.data() + be * b.data()};
    Hypermatrix lhs = multilinear_mult(xs, mix);
    Hypermatrix rhs{lhs.dims(), al * multilinear_mult(xs, a).data() +
                                    be * multilinear_mult(xs, b).data()};
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);

    for (int slot = 0; slot < 3; ++slot) {
      const RealMatrix y = random_matrix(xs[slot].rows(), xs[slot].cols(), g);
      std::vector<RealMatrix> mixed = xs;
      mixed[slot] = al * xs[slot] + be * y;
      std::vector<RealMatrix> ys = xs;
      ys[slot] = y;
      Hypermatrix l2 = multilinear_mult(mixed, a);
      Hypermatrix r2{l2.dims(), al * multilinear_mult(xs, a).data() +
                                    be * multilinear_mult(ys, a).data()};
      CHECK(max_abs_diff(l2, r2) < 1e-12);
    }
  }
}

TEST_CASE("outer product interacts with multilinear mult factorwise") {
  std::mt19937_64 g(8);
  for (int it = 0; it < 20; ++it) {
    const Hypermatrix v = random_tensor({3}, g);
    const Hypermatrix m = random_tensor({2, 4}, g);
    const RealMatrix xa = random_matrix(2, 3, g);
    const RealMatrix xb = random_matrix(3, 2, g);
    const RealMatrix xc = random_matrix(2, 4, g);
    const Hypermatrix lhs =
        multilinear_mult({xa, xb, xc}, outer_product(v, m));
    const Hypermatrix rhs = outer_product(multilinear_mult({xa}, v),
                                          multilinear_mult({xb, xc}, m));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("unfolding layout: first row enumerates the remaining modes in "
          "increasing order, lowest fastest") {
  // t_{ijk} encoded as 100i + 10j + k with 1-based indices.
  Hypermatrix t{std::vector<Index>{3, 4, 2}};
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 2; ++k)
        t.at({i, j, k}) = 100.0 * (i + 1) + 10.0 * (j + 1) + (k + 1);
  const RealMatrix u1 = unfold(t, 1);
  REQUIRE(u1.rows() == 3);
  REQUIRE(u1.cols() == 8);
  const double expect_row1[] = {111, 121, 131, 141, 112, 122, 132, 142};
  for (Index c = 0; c < 8; ++c) CHECK(u1(0, c) == expect_row1[c]);
  const double expect_row2[] = {211, 221, 231, 241, 212, 222, 232, 242};
  for (Index c = 0; c < 8; ++c) CHECK(u1(1, c) == expect_row2[c]);
}

TEST_CASE("unfolding a matrix along mode 1 is the matrix itself") {
  std::mt19937_64 g(9);
  const RealMatrix m = random_matrix(3, 5, g);
  CHECK(max_abs_diff(unfold(Hypermatrix(m), 1), m) == 0.0);
}

TEST_CASE("unfolding agrees with the index-map oracle") {
  std::mt19937_64 g(10);
  const Hypermatrix t = random_tensor({2, 3, 4}, g);
  for (int mode = 1; mode <= 3; ++mode) {
    const RealMatrix u = unfold(t, mode);
    const int k = mode - 1;
    std::vector<Index> idx(3, 0);
    // j = sum_{l != k} i_l * prod_{m < l, m != k} n_m, computed afresh.
    for (idx[0] = 0; idx[0] < 2; ++idx[0])
      for (idx[1] = 0; idx[1] < 3; ++idx[1])
        for (idx[2] = 0; idx[2] < 4; ++idx[2]) {
          Index j = 0, stride = 1;
          for (int l = 0; l < 3; ++l) {
            if (l == k) continue;
            j += idx[l] * stride;
            stride *= t.dims()[l];
          }
          CHECK(u(idx[k], j) == t.at(idx));
        }
  }
  CHECK_THROWS_AS(unfold(t, 0), IndexError);
  CHECK_THROWS_AS(unfold(t, 4), IndexError);
}

TEST_CASE("fold inverts unfold") {
  std::mt19937_64 g(11);
  const Hypermatrix t = random_tensor({3, 2, 4}, g);
  for (int mode = 1; mode <= 3; ++mode)
    CHECK(max_abs_diff(fold(unfold(t, mode), t.dims(), mode), t) == 0.0);
}

TEST_CASE("vec stacks columns") {
  CHECK(vec(RealMatrix::Identity(2, 2)).transpose() ==
        Eigen::RowVector4d(1, 0, 0, 1));
  std::mt19937_64 g(12);
  const RealMatrix row = random_matrix(1, 5, g);
  CHECK((vec(row) - row.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const RealMatrix m = random_matrix(3, 2, g);
  for (Index c = 0; c < 2; ++c)
    for (Index r = 0; r < 3; ++r) CHECK(vec(m)[r + 3 * c] == m(r, c));
}

TEST_CASE("kron basics") {
  const RealMatrix i2 = RealMatrix::Identity(2, 2);
  const RealMatrix i3 = RealMatrix::Identity(3, 3);
  CHECK(max_abs_diff(kron(i2, i3), RealMatrix::Identity(6, 6)) == 0.0);
  std::mt19937_64 g(13);
  const RealMatrix b = random_matrix(2, 3, g);
  const RealMatrix zero1 = RealMatrix::Zero(1, 1);
  CHECK(kron(zero1, b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vectorization identity: (v o M)_(1) = v vec(M)^t, exactly") {
  std::mt19937_64 g(14);
  const RealVector v = random_matrix(4, 1, g).col(0);
  const RealMatrix m = random_matrix(3, 5, g);
  const RealMatrix lhs = unfold(outer_product(v, m), 1);
  const RealMatrix rhs = v * vec(m).transpose();
  CHECK(max_abs_diff(lhs, rhs) == 0.0);
}

TEST_CASE("vectorization identity: (M o v)_(3)^t = vec(M) v^t") {
  std::mt19937_64 g(15);
  const RealMatrix m = random_matrix(3, 4, g);
  const RealVector v = random_matrix(5, 1, g).col(0);
  const RealMatrix lhs = unfold(outer_product(m, v), 3).transpose();
  const RealMatrix rhs = vec(m) * v.transpose();
  CHECK(max_abs_diff(lhs, rhs) == 0.0);
}

TEST_CASE("vec of a two-sided product is a Kronecker action on vec") {
  std::mt19937_64 g(16);
  for (int it = 0; it < 50; ++it) {
    const RealMatrix m = random_matrix(3, 4, g);
    const RealMatrix x1 = random_matrix(5, 3, g);
    const RealMatrix x2 = random_matrix(2, 4, g);
    const RealVector lhs =
        vec(multilinear_mult({x1, x2}, Hypermatrix(m)).as_matrix());
    const RealVector rhs = kron(x2, x1) * vec(m);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("order-3 unfoldings transform by Kronecker factors") {
  std::mt19937_64 g(17);
  for (int it = 0; it < 50; ++it) {
    const Hypermatrix t = random_tensor({3, 4, 2}, g);
    const RealMatrix a1 = random_matrix(3, 3, g);
    const RealMatrix a2 = random_matrix(5, 4, g);
    const RealMatrix a3 = random_matrix(2, 2, g);
    const Hypermatrix moved = multilinear_mult({a1, a2, a3}, t);
    CHECK(max_abs_diff(unfold(moved, 1),
                       a1 * unfold(t, 1) * kron(a3, a2).transpose()) < 1e-12);
    CHECK(max_abs_diff(unfold(moved, 2),
                       a2 * unfold(t, 2) * kron(a3, a1).transpose()) < 1e-12);
    CHECK(max_abs_diff(unfold(moved, 3),
                       a3 * unfold(t, 3) * kron(a2, a1).transpose()) < 1e-12);
  }
}

TEST_CASE("composition of multilinear mults") {
  std::mt19937_64 g(18);
  for (int it = 0; it < 20; ++it) {
    const Hypermatrix t = random_tensor({2, 3, 2}, g);
    const std::vector<RealMatrix> xs{random_matrix(3, 4, g),
                                     random_matrix(2, 2, g),
                                     random_matrix(3, 3, g)};
    const std::vector<RealMatrix> ys{random_matrix(4, 2, g),
                                     random_matrix(2, 3, g),
                                     random_matrix(3, 2, g)};
    std::vector<RealMatrix> prods;
    for (int k = 0; k < 3; ++k) prods.push_back(xs[k] * ys[k]);
    const Hypermatrix lhs = multilinear_mult(prods, t);
    const Hypermatrix rhs = multilinear_mult(xs, multilinear_mult(ys, t));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("hypermatrix invariants") {
  CHECK_THROWS_AS(Hypermatrix(std::vector<Index>{}), ShapeError);
  CHECK_THROWS_AS(Hypermatrix(std::vector<Index>{2, 0}), ShapeError);
  CHECK_THROWS_AS(Hypermatrix(std::vector<Index>{2, 2}, RealVector::Zero(3)),
                  ShapeError);
  Hypermatrix t{std::vector<Index>{2, 2}};
  CHECK_THROWS_AS(t.at({2, 0}), IndexError);
  CHECK_THROWS_AS(t.at({0}), IndexError);
}
