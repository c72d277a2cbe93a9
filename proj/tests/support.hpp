#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "hypergame/balls.hpp"
#include "hypergame/scalar.hpp"

namespace testing {

using namespace hypergame;

inline Scalar Q(const char* text) { return parse_scalar(text); }

inline FiniteCompact S(std::initializer_list<const char*> coords) {
  std::vector<Point> pts;
  for (const char* c : coords) pts.emplace_back(parse_scalar(c));
  return FiniteCompact(std::move(pts));
}

inline ProductBall PB(std::vector<FiniteCompact> prefix, const char* radius) {
  return {std::move(prefix), parse_scalar(radius)};
}

inline IncreasingBall IB(std::vector<FiniteCompact> prefix, const char* radius) {
  return {std::move(prefix), parse_scalar(radius)};
}

inline Scalar abs_diff(const Scalar& a, const Scalar& b) { return a < b ? Scalar(b - a) : Scalar(a - b); }

// Max-min over point pairs, written independently of the library sweep.
inline Scalar brute_hausdorff(const FiniteCompact& k, const FiniteCompact& l) {
  if (k.empty() && l.empty()) return 0;
  if (k.empty() || l.empty()) return 1;
  auto directed = [](const FiniteCompact& a, const FiniteCompact& b) {
    Scalar worst = 0;
    for (const Point& p : a) {
      Scalar best = 2;
      for (const Point& q : b) best = std::min(best, abs_diff(p.x, q.x));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(k, l), directed(l, k));
}

}  // namespace testing

#include "hypergame/harness.hpp"
#include "hypergame/strategies.hpp"

namespace testing {

inline std::vector<ProductBall> worked_player_one() {
  return {PB({S({"0"}), S({"1/2"})}, "1/10"), PB({S({"0"}), S({"1/2"}), S({"1/30"}), S({"3/4"})}, "1/2000")};
}

inline std::vector<IncreasingBall> worked_inner() {
  const FiniteCompact l2 = S({"0", "1/30", "1/2"});
  return {IB({S({"0"}), l2}, "1/200"), IB({S({"0"}), l2, l2, S({"0", "1/30", "1/2", "3/4"})}, "1/8000")};
}

// The hand-worked two-stage chain played in the K^N game.
inline ComposedGame worked_chain(Fault fault = Fault::none) {
  auto p1 = scripted_player<ProductBall>(worked_player_one());
  return play_fig1(*p1, scripted_player<IncreasingBall>(worked_inner()), 2, fault);
}

}  // namespace testing
