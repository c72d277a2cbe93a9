#include "hypergame/balls.hpp"

#include <algorithm>

namespace hypergame {

namespace {

const Space kInterval = Space::unit_interval();

void check_radius(const Scalar& r, ValidityReport& report) {
  if (r <= 0 || r >= 1) {
    report.push_back({"radius", "radius " + to_string(r) + " outside (0,1)"});
  }
}

void check_domain(std::span<const FiniteCompact> prefix, ValidityReport& report) {
  for (std::size_t n = 0; n < prefix.size(); ++n) {
    for (const Point& p : prefix[n]) {
      if (!kInterval.contains(p)) {
        report.push_back({"domain", "point " + to_string(p.x) + " of set " + std::to_string(n + 1) +
                                        " outside [0,1]"});
      }
    }
  }
}

// Reports the closest pair when the separation of `pts` falls below 3r.
void check_separation(const FiniteCompact& pts, const Scalar& r, ValidityReport& report) {
  const Scalar needed = 3 * r;
  const auto p = pts.points();
  for (std::size_t i = 1; i < p.size(); ++i) {
    const Scalar gap = distance(kInterval, p[i - 1], p[i]);
    if (gap < needed) {
      report.push_back({"separation", "points " + to_string(p[i - 1].x) + " and " + to_string(p[i].x) +
                                          " at distance " + to_string(gap) + " < 3r = " + to_string(needed)});
    }
  }
}

template <class Ball>
bool nested(const Ball& inner, const Ball& outer) {
  if (inner.index() < outer.index()) return false;
  if (inner.radius > outer.radius) return false;
  // d(A, B) <= slack, with slack < 1 so an empty set against a nonempty one fails.
  const Scalar slack = outer.radius - inner.radius;
  if (slack >= 1) {
    for (std::size_t n = 1; n <= outer.index(); ++n) {
      if (hausdorff(kInterval, inner.at(n), outer.at(n)) > slack) return false;
    }
    return true;
  }
  for (std::size_t n = 1; n <= outer.index(); ++n) {
    const FiniteCompact& a = inner.at(n);
    const FiniteCompact& b = outer.at(n);
    if (a == b) continue;
    if (!within_dilation(kInterval, a, b, slack) || !within_dilation(kInterval, b, a, slack)) return false;
  }
  return true;
}

template <class Ball>
bool member(const Ball& ball, std::span<const FiniteCompact> prefix) {
  if (prefix.size() < ball.index()) {
    throw InsufficientData("sequence prefix of length " + std::to_string(prefix.size()) +
                           " is shorter than the ball index " + std::to_string(ball.index()));
  }
  for (std::size_t n = 1; n <= ball.index(); ++n) {
    if (hausdorff(kInterval, prefix[n - 1], ball.at(n)) > ball.radius) return false;
  }
  return true;
}

}  // namespace

bool is_increasing(std::span<const FiniteCompact> sets) {
  for (std::size_t n = 1; n < sets.size(); ++n) {
    if (!is_subset(sets[n - 1], sets[n])) return false;
  }
  return true;
}

ValidityReport validate_product(const ProductBall& ball) {
  ValidityReport report;
  if (ball.index() == 0) report.push_back({"index", "index must be a positive integer"});
  check_radius(ball.radius, report);
  check_domain(ball.prefix, report);

  std::vector<Point> all;
  for (const auto& set : ball.prefix) all.insert(all.end(), set.begin(), set.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i] == all[i - 1] && (i < 2 || !(all[i - 2] == all[i]))) {
      report.push_back({"disjoint", "point " + to_string(all[i].x) + " belongs to more than one set"});
    }
  }
  check_separation(FiniteCompact(std::move(all)), ball.radius, report);
  return report;
}

ValidityReport validate_increasing(const IncreasingBall& ball) {
  ValidityReport report;
  if (ball.index() == 0) report.push_back({"index", "index must be a positive integer"});
  check_radius(ball.radius, report);
  check_domain(ball.prefix, report);
  for (std::size_t n = 1; n < ball.index(); ++n) {
    if (!is_subset(ball.prefix[n - 1], ball.prefix[n])) {
      report.push_back({"increasing", "set " + std::to_string(n) + " is not contained in set " +
                                          std::to_string(n + 1)});
    }
  }
  if (ball.index() > 0) check_separation(ball.prefix.back(), ball.radius, report);
  return report;
}

bool legal_nesting_product(const ProductBall& inner, const ProductBall& outer) { return nested(inner, outer); }

bool legal_nesting_increasing(const IncreasingBall& inner, const IncreasingBall& outer) {
  return nested(inner, outer);
}

bool contains_prefix(const ProductBall& ball, std::span<const FiniteCompact> prefix) {
  return member(ball, prefix);
}

bool contains_prefix(const IncreasingBall& ball, std::span<const FiniteCompact> prefix) {
  if (!member(ball, prefix)) return false;
  return is_increasing(prefix);
}

}  // namespace hypergame
