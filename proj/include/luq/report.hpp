#pragma once

#include <string>
#include <vector>

#include "luq/specht.hpp"

namespace luq {

/// Pipeline-level verdicts.  "distinguished" is certified; "consistent" is
/// only reported when every identity battery reached its completeness
/// ceiling; "consistent-at-horizon" is the honest default for clean runs.
enum class Verdict {
  distinguished,
  consistent_at_horizon,
  consistent,
  inconclusive,
};

std::string to_string(Verdict v);

/// CLI contract: 0 consistent(-at-horizon), 1 distinguished, 2 inconclusive.
int exit_code(Verdict v);

struct NormCheck {
  std::string label;
  double a = 0;
  double b = 0;
  bool pass = false;
};

/// Frobenius-norm comparison with relative tolerance tol * max(1, |a|).
NormCheck compare_norms(std::string label, double a, double b, double tol);

/// Fixed wording carried by every emitted report: sub-ceiling consistency is
/// never a proof of equivalence.
std::string certification_note(long long ceiling);

struct EquivalenceReport {
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  std::vector<NormCheck> norms;
  bool norm_disjunction = false;  // the criterion's side condition
  bool nondegenerate = false;
  IdentityReport identities;
  int horizon = 0;
  double tol = 0;
  long long ceiling = 0;
  std::string ceiling_note;
  bool lu_scope = false;  // consistency speaks to LU, not just quasi-LU
  std::string notes;
};

}  // namespace luq
