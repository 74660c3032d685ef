#pragma once

#include <array>
#include <optional>

#include "luq/equiv2.hpp"

namespace luq {

/// Correlation data of a tripartite state.
struct Rep3 {
  int d1 = 0;
  int d2 = 0;
  int d3 = 0;
  RealVector T1;
  RealVector T2;
  RealVector T3;
  RealMatrix T12;
  RealMatrix T13;
  RealMatrix T23;
  Hypermatrix T123{std::vector<Index>{1, 1, 1}};
};

/// Projects a three-party tensor representation.
Rep3 rep3_from(const TensorRep& rep);

/// Verifies a supplied witness (O1, O2, O3) against the four simultaneous
/// blocks: T123, T1 o T23, T2 o T13 (with the factor tuple permuted to match
/// the tensor's mode order) and T12 o T3.
bool so3_witness_check(const Rep3& a, const Rep3& b, const RealMatrix& o1,
                       const RealMatrix& o2, const RealMatrix& o3, double tol);

/// All seven Frobenius norms; each is individually preserved by any
/// per-party orthogonal action, so any failure certifies "distinguished".
std::vector<NormCheck> necessary_screen_3(const Rep3& a, const Rep3& b,
                                          double tol);

/// The six-matrix battery, mode-1 flavour: five delta_1 x delta_2*delta_3
/// unfoldings (T123, T1 o T23, T2 o T13, T12 o T3, T1 o T2 o T3) plus T1 as
/// a column.
std::array<RealMatrix, 6> build_battery_v1(const Rep3& a);

/// Mode-2 flavour: the same five products unfolded along the second party
/// (delta_2 x delta_1*delta_3) plus T2 as a column.  The vector letter
/// follows the derivation that traces out party 2.
std::array<RealMatrix, 6> build_battery_v2(const Rep3& a);

struct GramCheck {
  std::string label;
  double sigma_min = 0;
  double sigma_max = 0;
  bool invertible = false;  // sigma_min > 1e-8 * sigma_max
};

struct SignCheck {
  enum class Status { agree, disagree, degenerate };
  std::string label;
  double a = 0;
  double b = 0;
  Status status = Status::degenerate;
};

struct DetCheck {
  std::string label;
  double a = 0;
  double b = 0;
  bool equal = false;
  bool degenerate = false;  // |det| <= tol on either side
};

struct QubitUpgrade {
  enum class Status { granted, denied, inconclusive };
  Status status = Status::inconclusive;
  std::string reason;
  std::vector<SignCheck> signs;
  std::vector<DetCheck> dets;
};

/// Structured verdict of the tripartite battery; the overall verdict is a
/// pure function of the recorded fields.
struct ConditionLedger {
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  int version = 1;
  int horizon = 0;
  double tol = 0;
  std::vector<NormCheck> screen;      // all seven norms
  std::array<bool, 3> norm_pairs{};   // (T1|T23), (T2|T13), (T3|T12)
  std::vector<GramCheck> grams;       // both versions' candidates
  bool battery_admissible = false;    // this version's Gram condition
  EquivalenceReport reduced;          // partial-trace battery
  IdentityReport identities;
  long long ceiling = 0;
  std::string ceiling_note;
  bool nondegenerate = false;
  bool lu_scope = false;
  std::optional<QubitUpgrade> qubit;
};

/// Relative-rank threshold for the Gram admissibility test.
inline constexpr double kGramRankThreshold = 1e-8;

/// The tripartite battery: (1) three disjunctive norm pairs (all seven norms
/// screened as necessary conditions), (2) admissibility of the version's
/// Gram matrices, (3) the reduced battery on the partial trace over party 1
/// (version 1) or party 2 (version 2), (4) two-block trace identities on the
/// six-matrix battery.
ConditionLedger check_quasi_lu_3(const Rep3& a, const Rep3& b, int version,
                                 int max_len, double tol,
                                 const CheckOptions& opt = {});

/// Three-qubit upgrade: grants the LU scope flag when at least one of the
/// scalar triple products T_i^t T_ij T_j agrees in sign (both magnitudes
/// above tol) and all three pair determinants are equal and nonzero.
/// Degenerate values yield an inconclusive upgrade, never a guess.
ConditionLedger qubit_lu_upgrade(const Rep3& a, const Rep3& b,
                                 ConditionLedger ledger, double tol);

}  // namespace luq
