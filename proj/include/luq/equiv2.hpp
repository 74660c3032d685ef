#pragma once

#include "luq/qudit_state.hpp"
#include "luq/report.hpp"

namespace luq {

/// Correlation data of a bipartite state: T1 (delta_1), T2 (delta_2) and the
/// delta_1 x delta_2 matrix T12.
struct Rep2 {
  int d1 = 0;
  int d2 = 0;
  RealVector T1;
  RealVector T2;
  RealMatrix T12;
};

/// Projects a two-party tensor representation.
Rep2 rep2_from(const TensorRep& rep);

/// Verifies a supplied witness (O1, O2): true iff b.T12 = (O1,O2) * a.T12 and
/// b.T1 o b.T2 = (O1,O2) * (a.T1 o a.T2), both to tol.  With `special`, the
/// witnesses must additionally have determinant 1.
bool so2_witness_check(const Rep2& a, const Rep2& b, const RealMatrix& o1,
                       const RealMatrix& o2, double tol, bool special);

/// The bipartite decision battery: Frobenius-norm screening on T1, T2, T12
/// (each individually necessary) plus trace identities on the two-letter
/// tuple {T1 o T2, T12}.  A failed necessary check certifies
/// "distinguished"; clean nondegenerate runs report consistency at the
/// configured horizon; degenerate inputs (a zero T1, T2 or T12) cannot
/// certify equivalence and come back inconclusive.
EquivalenceReport check_quasi_lu_2(const Rep2& a, const Rep2& b, int max_len,
                                   double tol, const CheckOptions& opt = {});

/// Qubit variant (d1 = d2 = 2): same battery; consistency then speaks to LU
/// equivalence proper, recorded via the lu_scope flag.
EquivalenceReport check_lu_2qubit(const Rep2& a, const Rep2& b, int max_len,
                                  double tol, const CheckOptions& opt = {});

}  // namespace luq
