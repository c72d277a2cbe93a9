#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypergame/hyperspace.hpp"

namespace hypergame {

// B((K_n), a, r): sequences (A_n) with d(A_n, K_n) <= r for n = 1..a.
// Only the prefix K_1..K_a is stored; a == prefix.size().
struct ProductBall {
  std::vector<FiniteCompact> prefix;
  Scalar radius;

  std::size_t index() const { return prefix.size(); }
  // 1-based access, matching the indexing of the move families.
  const FiniteCompact& at(std::size_t n) const { return prefix.at(n - 1); }

  friend bool operator==(const ProductBall&, const ProductBall&) = default;
};

// B↗((L_n), b, s): increasing sequences with d(A_n, L_n) <= s for n = 1..b.
struct IncreasingBall {
  std::vector<FiniteCompact> prefix;
  Scalar radius;

  std::size_t index() const { return prefix.size(); }
  const FiniteCompact& at(std::size_t n) const { return prefix.at(n - 1); }

  friend bool operator==(const IncreasingBall&, const IncreasingBall&) = default;
};

struct ValidityIssue {
  std::string check;   // "index", "radius", "domain", "disjoint", "increasing", "separation"
  std::string detail;
};

using ValidityReport = std::vector<ValidityIssue>;

// Empty report iff the ball satisfies every condition of its move family.
ValidityReport validate_product(const ProductBall& ball);
ValidityReport validate_increasing(const IncreasingBall& ball);

inline ValidityReport validate(const ProductBall& ball) { return validate_product(ball); }
inline ValidityReport validate(const IncreasingBall& ball) { return validate_increasing(ball); }

// Triangle-inequality certificate that `inner` ⊂ `outer`:
// inner.index >= outer.index, inner.radius <= outer.radius and
// d(inner_n, outer_n) + inner.radius <= outer.radius for n <= outer.index.
bool legal_nesting_product(const ProductBall& inner, const ProductBall& outer);
bool legal_nesting_increasing(const IncreasingBall& inner, const IncreasingBall& outer);

inline bool legal_nesting(const ProductBall& inner, const ProductBall& outer) {
  return legal_nesting_product(inner, outer);
}
inline bool legal_nesting(const IncreasingBall& inner, const IncreasingBall& outer) {
  return legal_nesting_increasing(inner, outer);
}

class InsufficientData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Membership of a sequence prefix. Throws InsufficientData when the prefix is
// shorter than the ball's index.
bool contains_prefix(const ProductBall& ball, std::span<const FiniteCompact> prefix);
bool contains_prefix(const IncreasingBall& ball, std::span<const FiniteCompact> prefix);

bool is_increasing(std::span<const FiniteCompact> sets);

}  // namespace hypergame
