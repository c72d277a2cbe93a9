#include <doctest.h>

#include "hypergame/oracle.hpp"
#include "support.hpp"

using namespace testing;

namespace {

bool all_pass(const std::vector<OracleReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const OracleReport& r) { return r.pass(); });
}

const OracleReport& named(const std::vector<OracleReport>& reports, const std::string& name) {
  for (const auto& r : reports) {
    if (r.name == name) return r;
  }
  FAIL("no report named " << name);
  return reports.front();
}

}  // namespace

TEST_CASE("compact enumeration") {
  const std::vector<Point> three{Point(0, 1), Point(1, 2), Point(1, 1)};
  const auto subsets = enumerate_compacts(three);
  CHECK(subsets.size() == 8);
  CHECK(subsets.front().empty());
  CHECK(subsets[1] == S({"0"}));
  CHECK(subsets[3] == S({"0", "1/2"}));
  CHECK(subsets.back() == S({"0", "1/2", "1"}));

  const std::vector<Point> one{Point(1, 3)};
  const auto pair = enumerate_compacts(one);
  REQUIRE(pair.size() == 2);
  CHECK(pair[0].empty());
  CHECK(pair[1] == S({"1/3"}));

  CHECK(enumerate_compacts(Space::finite_grid(7)).size() == 256);
  CHECK_THROWS_AS(enumerate_compacts(Space::finite_grid(16)), OracleRefused);
  CHECK_THROWS_AS(enumerate_compacts(Space::unit_interval()), OracleRefused);
}

TEST_CASE("hausdorff axioms on {0, 1/2, 1}") {
  const auto reports = verify_hausdorff_axioms(Space::finite_grid(2));
  CHECK(all_pass(reports));
  CHECK(named(reports, "triangle").cases == 8 * 8 * 8);
  CHECK(named(reports, "identity").cases > 0);
}

TEST_CASE("triangle through the empty set is bounded by 2") {
  const Space x = Space::unit_interval();
  for (const auto& k : enumerate_compacts(Space::finite_grid(3))) {
    for (const auto& l : enumerate_compacts(Space::finite_grid(3))) {
      CHECK(hausdorff(x, k, l) <= hausdorff(x, k, {}) + hausdorff(x, {}, l));
    }
  }
}

TEST_CASE("a unit metric is caught by the identity axiom") {
  const SetMetric unit = [](const FiniteCompact&, const FiniteCompact&) { return Scalar(1); };
  const auto reports = verify_hausdorff_axioms(Space::finite_grid(2), unit);
  CHECK_FALSE(named(reports, "identity").pass());
  CHECK_FALSE(named(reports, "identity").counterexamples.empty());
  CHECK(named(reports, "identity").counterexamples.size() <= OracleReport::kMaxCounterexamples);
}

TEST_CASE("characterization on grid(4)") {
  const std::vector<Scalar> radii{Q("1/8"), Q("1/4"), Q("1/2")};
  const OracleReport r = verify_characterization(Space::finite_grid(4), radii);
  CHECK(r.pass());
  CHECK(r.cases == 3 * 32 * 32);
}

TEST_CASE("characterization edge cases") {
  const Space x = Space::unit_interval();
  const FiniteCompact k = S({"0", "1/2"});
  for (const char* r : {"0", "1/8", "1"}) {
    CHECK(hausdorff(x, k, k) <= Q(r));
    CHECK(within_dilation(x, k, k, Q(r)));
  }
  CHECK_FALSE(hausdorff(x, k, {}) <= Q("1/2"));
  CHECK_FALSE(within_dilation(x, k, {}, Q("1/2")));
}

TEST_CASE("oracle refuses large grids") {
  const std::vector<Scalar> radii{Q("1/2")};
  CHECK_THROWS_AS(verify_hausdorff_axioms(Space::finite_grid(9)), OracleRefused);
  CHECK_THROWS_AS(verify_characterization(Space::finite_grid(9), radii), OracleRefused);
}

TEST_CASE("nesting soundness of the worked stage 1") {
  const std::vector<Point> universe{Point(0, 1),   Point(1, 400), Point(1, 30), Point(1, 24),
                                    Point(1, 2),   Point(1, 4),   Point(199, 400)};
  const IncreasingBall l = IB({S({"0"}), S({"0", "1/30", "1/2"})}, "1/200");
  const IncreasingBall k_tilde = IB({S({"0"}), S({"0", "1/2"})}, "1/20");
  REQUIRE(legal_nesting(l, k_tilde));
  const std::vector<BallPair> pairs{std::pair{l, k_tilde}, std::pair{l, l}, std::pair{k_tilde, l},
                                    std::pair{PB({S({"0"}), S({"1/2"})}, "1/40"), PB({S({"0"}), S({"1/2"})}, "1/10")}};
  const OracleReport r = verify_nesting_soundness(universe, pairs);
  CHECK(r.pass());
  CHECK(r.cases > 0);

  const std::vector<BallPair> deep{std::pair{PB({S({"0"}), S({"1/2"}), S({"1"})}, "1/10"),
                                             PB({S({"0"}), S({"1/2"}), S({"1"})}, "1/10")}};
  CHECK_THROWS_AS(verify_nesting_soundness(universe, deep), OracleRefused);
}
