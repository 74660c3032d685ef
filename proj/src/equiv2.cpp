#include "luq/equiv2.hpp"

#include <string>
#include <utility>

namespace luq {

namespace {

void check_orthogonal(const RealMatrix& o, double tol, bool special,
                      const char* name) {
  if (o.rows() != o.cols())
    throw NotOrthogonalError(std::string(name) + " is not square");
  const Index n = o.rows();
  const double res =
      (o.transpose() * o - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (res > tol)
    throw NotOrthogonalError(std::string(name) + " is not orthogonal to " +
                             std::to_string(tol));
  if (special && std::abs(o.determinant() - 1.0) > tol)
    throw NotOrthogonalError(std::string(name) +
                             " must have determinant 1");
}

void check_shapes(const Rep2& a, const Rep2& b) {
  if (a.d1 < 2 || a.d2 < 2) throw ShapeError("local dimensions must be >= 2");
  const Index d1 = static_cast<Index>(a.d1) * a.d1 - 1;
  const Index d2 = static_cast<Index>(a.d2) * a.d2 - 1;
  if (a.T1.size() != d1 || a.T2.size() != d2 || a.T12.rows() != d1 ||
      a.T12.cols() != d2)
    throw ShapeError("representation shapes do not match the partition");
  if (b.d1 != a.d1 || b.d2 != a.d2 || b.T1.size() != a.T1.size() ||
      b.T2.size() != a.T2.size() || b.T12.rows() != a.T12.rows() ||
      b.T12.cols() != a.T12.cols())
    throw ShapeError("the two representations must share a partition");
}

}  // namespace

Rep2 rep2_from(const TensorRep& rep) {
  if (rep.parties() != 2)
    throw ShapeError("rep2_from needs a two-party representation");
  Rep2 out;
  out.d1 = rep.dims[0];
  out.d2 = rep.dims[1];
  out.T1 = rep.at({1}).as_vector();
  out.T2 = rep.at({2}).as_vector();
  out.T12 = rep.at({1, 2}).as_matrix();
  return out;
}

bool so2_witness_check(const Rep2& a, const Rep2& b, const RealMatrix& o1,
                       const RealMatrix& o2, double tol, bool special) {
  check_shapes(a, b);
  check_orthogonal(o1, tol, special, "O1");
  check_orthogonal(o2, tol, special, "O2");
  if (o1.rows() != a.T12.rows() || o2.rows() != a.T12.cols())
    throw ShapeError("witness sizes do not match the representation");
  const RealMatrix t12 = o1 * a.T12 * o2.transpose();
  const RealMatrix outer = o1 * (a.T1 * a.T2.transpose()) * o2.transpose();
  const double r1 = (b.T12 - t12).cwiseAbs().maxCoeff();
  const double r2 =
      (b.T1 * b.T2.transpose() - outer).cwiseAbs().maxCoeff();
  return r1 <= tol && r2 <= tol;
}

EquivalenceReport check_quasi_lu_2(const Rep2& a, const Rep2& b, int max_len,
                                   double tol, const CheckOptions& opt) {
  check_shapes(a, b);
  EquivalenceReport rep;
  rep.horizon = max_len;
  rep.tol = tol;

  rep.norms.push_back(compare_norms("|T1|", a.T1.norm(), b.T1.norm(), tol));
  rep.norms.push_back(compare_norms("|T2|", a.T2.norm(), b.T2.norm(), tol));
  rep.norms.push_back(compare_norms("|T12|", a.T12.norm(), b.T12.norm(), tol));
  rep.norm_disjunction = rep.norms[0].pass || rep.norms[1].pass;
  rep.notes =
      "the criterion's side condition is |T1| or |T2|; all three norms are "
      "recorded because each is individually preserved by any orthogonal "
      "action";

  rep.nondegenerate =
      a.T1.norm() > tol && a.T2.norm() > tol && a.T12.norm() > tol;

  const std::vector<RealMatrix> as{a.T1 * a.T2.transpose(), a.T12};
  const std::vector<RealMatrix> bs{b.T1 * b.T2.transpose(), b.T12};
  rep.identities = jing_check(as, bs, max_len, tol, opt);
  rep.ceiling = rep.identities.ceiling;
  rep.ceiling_note = rep.identities.ceiling_note;

  bool norm_fail = false;
  for (const auto& n : rep.norms) norm_fail = norm_fail || !n.pass;

  if (norm_fail ||
      rep.identities.verdict == IdentityReport::Verdict::distinguished) {
    rep.verdict = Verdict::distinguished;
    rep.reason = norm_fail ? "a preserved norm differs"
                           : "a trace identity is violated";
  } else if (!rep.nondegenerate) {
    rep.verdict = Verdict::inconclusive;
    rep.reason =
        "degenerate representation: the sufficiency direction needs T1, T2 "
        "and T12 all nonzero";
  } else if (rep.identities.verdict == IdentityReport::Verdict::consistent &&
             rep.norm_disjunction) {
    rep.verdict = Verdict::consistent;
  } else {
    rep.verdict = Verdict::consistent_at_horizon;
  }
  return rep;
}

EquivalenceReport check_lu_2qubit(const Rep2& a, const Rep2& b, int max_len,
                                  double tol, const CheckOptions& opt) {
  if (a.d1 != 2 || a.d2 != 2 || b.d1 != 2 || b.d2 != 2)
    throw ShapeError("check_lu_2qubit needs two qubits on both sides");
  EquivalenceReport rep = check_quasi_lu_2(a, b, max_len, tol, opt);
  if (rep.verdict == Verdict::consistent ||
      rep.verdict == Verdict::consistent_at_horizon) {
    // For qubits the induced orthogonal actions exhaust SO(3), so a
    // consistent battery speaks to LU equivalence, not just quasi-LU.
    rep.lu_scope = true;
  }
  return rep;
}

}  // namespace luq
