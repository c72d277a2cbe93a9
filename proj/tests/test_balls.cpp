#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

bool has_issue(const ValidityReport& report, const std::string& check) {
  return std::any_of(report.begin(), report.end(), [&](const ValidityIssue& i) { return i.check == check; });
}

// d(inner_n, outer_n) + inner.r <= outer.r at every index of the outer ball.
template <class Ball>
bool hand_inequality(const Ball& inner, const Ball& outer) {
  if (inner.index() < outer.index() || inner.radius > outer.radius) return false;
  for (std::size_t n = 1; n <= outer.index(); ++n) {
    if (brute_hausdorff(inner.at(n), outer.at(n)) + inner.radius > outer.radius) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("product ball validity") {
  CHECK(validate(PB({S({"0"}), S({"1/2"})}, "1/10")).empty());

  const auto wide = validate(PB({S({"0"}), S({"1/2"})}, "1/5"));
  REQUIRE(wide.size() == 1);
  CHECK(wide[0].check == "separation");
  CHECK(wide[0].detail.find("3/5") != std::string::npos);

  CHECK(has_issue(validate(PB({S({"0"}), S({"0"})}, "1/10")), "disjoint"));
  CHECK(has_issue(validate(PB({S({"0"})}, "0")), "radius"));
  CHECK(has_issue(validate(PB({S({"0"})}, "1")), "radius"));
  CHECK(has_issue(validate(PB({S({"3/2"})}, "1/10")), "domain"));
  CHECK(has_issue(validate(PB({}, "1/10")), "index"));
}

TEST_CASE("increasing ball validity") {
  CHECK(validate(IB({S({"0"}), S({"0", "1/2"})}, "1/8")).empty());
  CHECK(has_issue(validate(IB({S({"0", "1/2"}), S({"0"})}, "1/8")), "increasing"));
  const auto tight = validate(IB({S({"0"}), S({"0", "1/4"})}, "1/10"));
  CHECK(has_issue(tight, "separation"));
  CHECK(has_issue(validate(IB({}, "1/8")), "index"));
}

TEST_CASE("product nesting") {
  const ProductBall inner = PB({S({"0"}), S({"1/2"}), S({"1/30"}), S({"3/4"})}, "1/2000");
  const ProductBall outer = PB({S({"0"}), S({"1/2"}), S({"1/30"})}, "1/400");
  CHECK(hand_inequality(inner, outer));
  CHECK(legal_nesting(inner, outer));
  CHECK_FALSE(legal_nesting(outer, inner));
  CHECK(legal_nesting(outer, outer));

  const ProductBall shifted = PB({S({"1/2"})}, "1/10");
  const ProductBall origin = PB({S({"0"})}, "1/10");
  CHECK_FALSE(hand_inequality(shifted, origin));
  CHECK_FALSE(legal_nesting(shifted, origin));
}

TEST_CASE("increasing nesting") {
  const IncreasingBall inner = IB({S({"0"}), S({"0", "1/30", "1/2"})}, "1/200");
  const IncreasingBall outer = IB({S({"0"}), S({"0", "1/2"})}, "1/20");
  CHECK(brute_hausdorff(inner.at(2), outer.at(2)) == Q("1/30"));
  CHECK(hand_inequality(inner, outer));
  CHECK(legal_nesting(inner, outer));
  CHECK(legal_nesting(outer, outer));

  const IncreasingBall looser = IB({S({"0"}), S({"0", "1/2"})}, "1/10");
  CHECK_FALSE(legal_nesting(looser, outer));
}

TEST_CASE("nesting is exact at the boundary") {
  const ProductBall outer = PB({S({"0"})}, "1/10");
  CHECK(legal_nesting(PB({S({"1/20"})}, "1/20"), outer));
  CHECK_FALSE(legal_nesting(PB({S({"1/20"})}, "101/2000"), outer));
  CHECK_FALSE(legal_nesting(PB({FiniteCompact{}}, "1/20"), outer));
}

TEST_CASE("prefix membership") {
  const ProductBall ball = PB({S({"0"})}, "1/10");
  const std::vector<FiniteCompact> near{S({"1/20"})};
  CHECK(contains_prefix(ball, near));
  CHECK(contains_prefix(ball, ball.prefix));
  const std::vector<FiniteCompact> empty{FiniteCompact{}};
  CHECK_FALSE(contains_prefix(ball, empty));
  const std::vector<FiniteCompact> far{S({"1/2"})};
  CHECK_FALSE(contains_prefix(ball, far));

  const IncreasingBall two = IB({S({"0"}), S({"0", "1/2"})}, "1/8");
  const std::vector<FiniteCompact> short_prefix{S({"0"})};
  CHECK_THROWS_AS(contains_prefix(two, short_prefix), InsufficientData);
  const std::vector<FiniteCompact> longer{S({"0"}), S({"0", "1/2"}), S({"0", "1/2", "1"})};
  CHECK(contains_prefix(two, longer));
}

TEST_CASE("increasing sequences") {
  const std::vector<FiniteCompact> up{S({"0"}), S({"0", "1/2"}), S({"0", "1/2"})};
  CHECK(is_increasing(up));
  const std::vector<FiniteCompact> down{S({"0", "1/2"}), S({"0"})};
  CHECK_FALSE(is_increasing(down));
}
