#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "hypergame/space.hpp"

namespace hypergame {

// A finite compact set: sorted, duplicate-free, possibly empty.
class FiniteCompact {
 public:
  FiniteCompact() = default;
  FiniteCompact(std::initializer_list<Point> pts) : FiniteCompact(std::vector<Point>(pts)) {}
  explicit FiniteCompact(std::vector<Point> pts);

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(const Point& p) const;

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const FiniteCompact&, const FiniteCompact&) = default;

 private:
  std::vector<Point> points_;
};

FiniteCompact set_union(const FiniteCompact& a, const FiniteCompact& b);
FiniteCompact set_difference(const FiniteCompact& a, const FiniteCompact& b);
FiniteCompact set_intersection(const FiniteCompact& a, const FiniteCompact& b);
bool is_subset(const FiniteCompact& a, const FiniteCompact& b);
FiniteCompact union_of(std::span<const FiniteCompact> sets);

// Nearest point of `set` to `p`; nullopt for the empty set. Ties go to the smaller point.
std::optional<Point> nearest_point(const FiniteCompact& set, const Point& p);

// Hausdorff distance with d(K,∅) = d(∅,K) = 1 for nonempty K and d(∅,∅) = 0.
Scalar hausdorff(const Space& space, const FiniteCompact& k, const FiniteCompact& l);

// K ⊂ L[r]: every point of K lies within r of some point of L.
bool within_dilation(const Space& space, const FiniteCompact& k, const FiniteCompact& l, const Scalar& r);

// Lebesgue measure of K[r] ∩ [0,1].
Scalar interval_measure(const FiniteCompact& k, const Scalar& r);

}  // namespace hypergame
