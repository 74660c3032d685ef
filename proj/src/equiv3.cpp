#include "luq/equiv3.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>
#include <utility>

namespace luq {

namespace {

void check_orthogonal(const RealMatrix& o, double tol, const char* name) {
  if (o.rows() != o.cols())
    throw NotOrthogonalError(std::string(name) + " is not square");
  const Index n = o.rows();
  const double res =
      (o.transpose() * o - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (res > tol)
    throw NotOrthogonalError(std::string(name) + " is not orthogonal to " +
                             std::to_string(tol));
}

void check_shapes(const Rep3& a, const Rep3& b) {
  if (a.d1 < 2 || a.d2 < 2 || a.d3 < 2)
    throw ShapeError("local dimensions must be >= 2");
  const Index d1 = static_cast<Index>(a.d1) * a.d1 - 1;
  const Index d2 = static_cast<Index>(a.d2) * a.d2 - 1;
  const Index d3 = static_cast<Index>(a.d3) * a.d3 - 1;
  const std::vector<Index> tdims{d1, d2, d3};
  if (a.T1.size() != d1 || a.T2.size() != d2 || a.T3.size() != d3 ||
      a.T12.rows() != d1 || a.T12.cols() != d2 || a.T13.rows() != d1 ||
      a.T13.cols() != d3 || a.T23.rows() != d2 || a.T23.cols() != d3 ||
      a.T123.dims() != tdims)
    throw ShapeError("representation shapes do not match the partition");
  if (b.d1 != a.d1 || b.d2 != a.d2 || b.d3 != a.d3 || b.T1.size() != d1 ||
      b.T2.size() != d2 || b.T3.size() != d3 || b.T12.rows() != d1 ||
      b.T12.cols() != d2 || b.T13.rows() != d1 || b.T13.cols() != d3 ||
      b.T23.rows() != d2 || b.T23.cols() != d3 || b.T123.dims() != tdims)
    throw ShapeError("the two representations must share a partition");
}

GramCheck gram_check(std::string label, const RealMatrix& unfolding) {
  GramCheck g;
  g.label = std::move(label);
  const RealMatrix gram = unfolding.transpose() * unfolding;
  Eigen::JacobiSVD<RealMatrix> svd(gram);
  g.sigma_max = svd.singularValues().maxCoeff();
  g.sigma_min = svd.singularValues().minCoeff();
  g.invertible = g.sigma_min > kGramRankThreshold * g.sigma_max;
  return g;
}

double triple(const RealVector& l, const RealMatrix& m, const RealVector& r) {
  return l.dot(m * r);
}

SignCheck sign_check(std::string label, double a, double b, double tol) {
  SignCheck s;
  s.label = std::move(label);
  s.a = a;
  s.b = b;
  if (std::abs(a) <= tol || std::abs(b) <= tol)
    s.status = SignCheck::Status::degenerate;
  else
    s.status = ((a > 0) == (b > 0)) ? SignCheck::Status::agree
                                    : SignCheck::Status::disagree;
  return s;
}

DetCheck det_check(std::string label, const RealMatrix& ma,
                   const RealMatrix& mb, double tol) {
  DetCheck d;
  d.label = std::move(label);
  d.a = ma.determinant();
  d.b = mb.determinant();
  d.degenerate = std::abs(d.a) <= tol || std::abs(d.b) <= tol;
  d.equal = std::abs(d.a - d.b) <= tol * std::max(1.0, std::abs(d.a));
  return d;
}

}  // namespace

Rep3 rep3_from(const TensorRep& rep) {
  if (rep.parties() != 3)
    throw ShapeError("rep3_from needs a three-party representation");
  Rep3 out;
  out.d1 = rep.dims[0];
  out.d2 = rep.dims[1];
  out.d3 = rep.dims[2];
  out.T1 = rep.at({1}).as_vector();
  out.T2 = rep.at({2}).as_vector();
  out.T3 = rep.at({3}).as_vector();
  out.T12 = rep.at({1, 2}).as_matrix();
  out.T13 = rep.at({1, 3}).as_matrix();
  out.T23 = rep.at({2, 3}).as_matrix();
  out.T123 = rep.at({1, 2, 3});
  return out;
}

bool so3_witness_check(const Rep3& a, const Rep3& b, const RealMatrix& o1,
                       const RealMatrix& o2, const RealMatrix& o3,
                       double tol) {
  check_shapes(a, b);
  check_orthogonal(o1, tol, "O1");
  check_orthogonal(o2, tol, "O2");
  check_orthogonal(o3, tol, "O3");
  if (o1.rows() != a.T1.size() || o2.rows() != a.T2.size() ||
      o3.rows() != a.T3.size())
    throw ShapeError("witness sizes do not match the representation");

  auto close = [tol](const Hypermatrix& x, const Hypermatrix& y) {
    return (x.data() - y.data()).cwiseAbs().maxCoeff() <= tol;
  };
  const std::vector<RealMatrix> o123{o1, o2, o3};
  if (!close(b.T123, multilinear_mult(o123, a.T123))) return false;
  if (!close(outer_product(b.T1, b.T23),
             multilinear_mult(o123, outer_product(a.T1, a.T23))))
    return false;
  // T2 o T13 has mode dims (delta_2, delta_1, delta_3), so the factor tuple
  // is permuted accordingly.
  if (!close(outer_product(b.T2, b.T13),
             multilinear_mult({o2, o1, o3}, outer_product(a.T2, a.T13))))
    return false;
  if (!close(outer_product(b.T12, b.T3),
             multilinear_mult(o123, outer_product(a.T12, a.T3))))
    return false;
  return true;
}

std::vector<NormCheck> necessary_screen_3(const Rep3& a, const Rep3& b,
                                          double tol) {
  check_shapes(a, b);
  std::vector<NormCheck> out;
  out.push_back(compare_norms("|T1|", a.T1.norm(), b.T1.norm(), tol));
  out.push_back(compare_norms("|T2|", a.T2.norm(), b.T2.norm(), tol));
  out.push_back(compare_norms("|T3|", a.T3.norm(), b.T3.norm(), tol));
  out.push_back(compare_norms("|T12|", a.T12.norm(), b.T12.norm(), tol));
  out.push_back(compare_norms("|T13|", a.T13.norm(), b.T13.norm(), tol));
  out.push_back(compare_norms("|T23|", a.T23.norm(), b.T23.norm(), tol));
  out.push_back(compare_norms("|T123|", a.T123.norm(), b.T123.norm(), tol));
  return out;
}

std::array<RealMatrix, 6> build_battery_v1(const Rep3& a) {
  std::array<RealMatrix, 6> out;
  out[0] = unfold(a.T123, 1);
  out[1] = unfold(outer_product(a.T1, a.T23), 1);
  out[2] = unfold(outer_product(a.T2, a.T13), 2);
  out[3] = unfold(outer_product(a.T12, a.T3), 1);
  out[4] = unfold(outer_product(outer_product(a.T1, a.T2), a.T3), 1);
  out[5] = a.T1;
  return out;
}

std::array<RealMatrix, 6> build_battery_v2(const Rep3& a) {
  std::array<RealMatrix, 6> out;
  out[0] = unfold(a.T123, 2);
  out[1] = unfold(outer_product(a.T1, a.T23), 2);
  out[2] = unfold(outer_product(a.T2, a.T13), 1);
  out[3] = unfold(outer_product(a.T12, a.T3), 2);
  out[4] = unfold(outer_product(outer_product(a.T1, a.T2), a.T3), 2);
  out[5] = a.T2;
  return out;
}

ConditionLedger check_quasi_lu_3(const Rep3& a, const Rep3& b, int version,
                                 int max_len, double tol,
                                 const CheckOptions& opt) {
  check_shapes(a, b);
  if (version != 1 && version != 2)
    throw ShapeError("battery version must be 1 or 2");

  ConditionLedger led;
  led.version = version;
  led.horizon = max_len;
  led.tol = tol;

  led.screen = necessary_screen_3(a, b, tol);
  led.norm_pairs[0] = led.screen[0].pass || led.screen[5].pass;  // T1 | T23
  led.norm_pairs[1] = led.screen[1].pass || led.screen[4].pass;  // T2 | T13
  led.norm_pairs[2] = led.screen[2].pass || led.screen[3].pass;  // T3 | T12
  bool screen_fail = false;
  for (const auto& n : led.screen) screen_fail = screen_fail || !n.pass;

  led.grams.push_back(
      gram_check("(T1 o T23)_(1)", unfold(outer_product(a.T1, a.T23), 1)));
  led.grams.push_back(gram_check(
      "(T1 o T2 o T3)_(1)",
      unfold(outer_product(outer_product(a.T1, a.T2), a.T3), 1)));
  led.grams.push_back(
      gram_check("(T2 o T13)_(1)", unfold(outer_product(a.T2, a.T13), 1)));
  led.grams.push_back(gram_check(
      "(T1 o T2 o T3)_(2)",
      unfold(outer_product(outer_product(a.T1, a.T2), a.T3), 2)));
  const bool v1_admissible = led.grams[0].invertible || led.grams[1].invertible;
  const bool v2_admissible = led.grams[2].invertible || led.grams[3].invertible;
  led.battery_admissible = (version == 1) ? v1_admissible : v2_admissible;

  // Reduced battery on the parties the version keeps.
  Rep2 ra, rb;
  if (version == 1) {
    ra = Rep2{a.d2, a.d3, a.T2, a.T3, a.T23};
    rb = Rep2{b.d2, b.d3, b.T2, b.T3, b.T23};
  } else {
    ra = Rep2{a.d1, a.d3, a.T1, a.T3, a.T13};
    rb = Rep2{b.d1, b.d3, b.T1, b.T3, b.T13};
  }
  led.reduced = check_quasi_lu_2(ra, rb, max_len, tol, opt);

  const auto batt_a = (version == 1) ? build_battery_v1(a) : build_battery_v2(a);
  const auto batt_b = (version == 1) ? build_battery_v1(b) : build_battery_v2(b);
  const std::vector<RealMatrix> a1(batt_a.begin(), batt_a.begin() + 5);
  const std::vector<RealMatrix> a2{batt_a[5]};
  const std::vector<RealMatrix> b1(batt_b.begin(), batt_b.begin() + 5);
  const std::vector<RealMatrix> b2{batt_b[5]};
  led.identities =
      futorny_two_block_check(a1, a2, b1, b2, max_len, tol, opt);
  led.ceiling = led.identities.ceiling;
  led.ceiling_note = led.identities.ceiling_note;

  led.nondegenerate = a.T1.norm() > tol && a.T2.norm() > tol &&
                      a.T3.norm() > tol && a.T12.norm() > tol &&
                      a.T13.norm() > tol && a.T23.norm() > tol;

  if (screen_fail || led.reduced.verdict == Verdict::distinguished ||
      led.identities.verdict == IdentityReport::Verdict::distinguished) {
    led.verdict = Verdict::distinguished;
    if (screen_fail)
      led.reason = "a preserved norm differs";
    else if (led.reduced.verdict == Verdict::distinguished)
      led.reason = "the reduced representations are distinguished";
    else
      led.reason = "a trace identity is violated";
  } else if (!led.nondegenerate) {
    led.verdict = Verdict::inconclusive;
    led.reason =
        "degenerate representation: the sufficiency direction needs all "
        "single- and two-party tensors nonzero";
  } else if (!v1_admissible && !v2_admissible) {
    led.verdict = Verdict::inconclusive;
    led.reason =
        "no admissible battery: every Gram candidate is rank deficient, so "
        "the identities cannot force a factored witness";
  } else if (led.battery_admissible &&
             led.identities.verdict == IdentityReport::Verdict::consistent &&
             led.reduced.verdict == Verdict::consistent &&
             led.norm_pairs[0] && led.norm_pairs[1] && led.norm_pairs[2]) {
    led.verdict = Verdict::consistent;
  } else {
    led.verdict = Verdict::consistent_at_horizon;
    if (!led.battery_admissible)
      led.reason = "this version's Gram condition fails; the other version's "
                   "candidate is invertible";
  }
  return led;
}

ConditionLedger qubit_lu_upgrade(const Rep3& a, const Rep3& b,
                                 ConditionLedger ledger, double tol) {
  check_shapes(a, b);
  if (a.d1 != 2 || a.d2 != 2 || a.d3 != 2)
    throw ShapeError("qubit_lu_upgrade needs three qubits");
  if (ledger.verdict == Verdict::distinguished)
    throw InvalidState(
        "qubit_lu_upgrade applies only when the pair is not distinguished");

  QubitUpgrade up;
  up.signs.push_back(sign_check("T1^t T12 T2", triple(a.T1, a.T12, a.T2),
                                triple(b.T1, b.T12, b.T2), tol));
  up.signs.push_back(sign_check("T2^t T23 T3", triple(a.T2, a.T23, a.T3),
                                triple(b.T2, b.T23, b.T3), tol));
  // The third triple contracts T13 against party 1 on the left and party 3
  // on the right; any other pairing leaves orthogonal factors uncancelled.
  up.signs.push_back(sign_check("T1^t T13 T3", triple(a.T1, a.T13, a.T3),
                                triple(b.T1, b.T13, b.T3), tol));
  up.dets.push_back(det_check("det T12", a.T12, b.T12, tol));
  up.dets.push_back(det_check("det T13", a.T13, b.T13, tol));
  up.dets.push_back(det_check("det T23", a.T23, b.T23, tol));

  bool any_agree = false, any_disagree = false;
  for (const auto& s : up.signs) {
    any_agree = any_agree || s.status == SignCheck::Status::agree;
    any_disagree = any_disagree || s.status == SignCheck::Status::disagree;
  }
  bool det_degenerate = false, det_mismatch = false;
  std::string det_label;
  for (const auto& d : up.dets) {
    det_degenerate = det_degenerate || d.degenerate;
    if (!d.degenerate && !d.equal && det_label.empty()) det_label = d.label;
    det_mismatch = det_mismatch || (!d.degenerate && !d.equal);
  }

  if (det_mismatch) {
    up.status = QubitUpgrade::Status::denied;
    up.reason = "determinant mismatch on " + det_label +
                ": a sign-flipped action cannot be special orthogonal";
  } else if (any_agree && !det_degenerate) {
    up.status = QubitUpgrade::Status::granted;
    up.reason = "a triple product agrees in sign and all pair determinants "
                "match and are nonzero";
    ledger.lu_scope = true;
  } else if (any_disagree && !any_agree) {
    up.status = QubitUpgrade::Status::denied;
    up.reason = "every nondegenerate triple product changes sign";
  } else {
    up.status = QubitUpgrade::Status::inconclusive;
    up.reason = "qubit hypotheses unmet: sign or determinant values are "
                "below the tolerance";
  }
  ledger.qubit = std::move(up);
  return ledger;
}

}  // namespace luq
