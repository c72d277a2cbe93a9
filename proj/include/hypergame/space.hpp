#pragma once

#include <span>
#include <string>
#include <vector>

#include "hypergame/scalar.hpp"

namespace hypergame {

// A point of the ambient space. Every supported space sits inside [0,1].
struct Point {
  Scalar x;

  Point() = default;
  Point(Scalar coordinate) : x(std::move(coordinate)) {}  // NOLINT(implicit)
  Point(long num, long den) : x(rational(num, den)) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x; }
  friend bool operator<(const Point& a, const Point& b) { return less(a.x, b.x); }

  // Canonical rationals with equal denominators order by numerator alone.
  static bool less(const Scalar& a, const Scalar& b) {
    if (mpz_cmp(a.get_den_mpz_t(), b.get_den_mpz_t()) == 0) return mpz_cmp(a.get_num_mpz_t(), b.get_num_mpz_t()) < 0;
    return a < b;
  }
};

// The ambient compact metric space, always with rho(x,y) = |x - y|.
//
// The unit interval is the only space that hosts games (it is dense-in-itself).
// finite-grid(n) = {0, 1/n, ..., 1} exists for the brute-force oracles.
class Space {
 public:
  enum class Kind { unit_interval, finite_grid };

  static Space unit_interval() { return Space(Kind::unit_interval, 0); }
  static Space finite_grid(unsigned resolution);

  Kind kind() const { return kind_; }
  unsigned resolution() const { return resolution_; }
  bool dense_in_itself() const { return kind_ == Kind::unit_interval; }

  bool contains(const Point& p) const;
  // Grid points in increasing order. Throws std::logic_error on the interval.
  std::vector<Point> points() const;
  std::string name() const;

 private:
  Space(Kind kind, unsigned resolution) : kind_(kind), resolution_(resolution) {}

  Kind kind_;
  unsigned resolution_;
};

Scalar distance(const Space& space, const Point& x, const Point& y);

// Minimum distance between distinct points of `pts` (treated as a set);
// 1 when there are fewer than two distinct points.
Scalar separation(const Space& space, std::span<const Point> pts);

}  // namespace hypergame
