#include "luq/report.hpp"

#include <cmath>

namespace luq {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::distinguished:
      return "distinguished";
    case Verdict::consistent_at_horizon:
      return "consistent-at-horizon";
    case Verdict::consistent:
      return "consistent";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::distinguished:
      return 1;
    case Verdict::consistent_at_horizon:
    case Verdict::consistent:
      return 0;
    case Verdict::inconclusive:
      return 2;
  }
  return 2;
}

NormCheck compare_norms(std::string label, double a, double b, double tol) {
  NormCheck c;
  c.label = std::move(label);
  c.a = a;
  c.b = b;
  c.pass = std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
  return c;
}

std::string certification_note(long long ceiling) {
  return "'distinguished' verdicts are certified; a clean run below the "
         "completeness ceiling of " +
         std::to_string(ceiling) +
         " words is reported as 'consistent-at-horizon' and is not a proof "
         "of equivalence";
}

}  // namespace luq
