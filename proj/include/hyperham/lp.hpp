#pragma once

#include "hyperham/rational.hpp"

#include <cstdint>
#include <vector>

namespace hyperham {

struct LpResult {
  Rational value;
  std::vector<Rational> primal;
  std::vector<Rational> dual;  // one per row
  bool dual_verified = false;  // y >= 0, A^T y >= c and b.y = value, checked exactly
  std::uint64_t pivots = 0;
};

// maximize c.x subject to A x <= b, x >= 0, with b >= 0 so the slack basis
// is feasible. Dense tableau, exact arithmetic, Bland's rule. Throws
// DomainError when the program is unbounded or b has a negative entry.
LpResult maximize(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c);

}  // namespace hyperham
