#include <doctest.h>

#include "support.hpp"

using namespace testing;

TEST_CASE("scalar literals round-trip in lowest terms") {
  CHECK(to_string(Q("2/4")) == "1/2");
  CHECK(to_string(Q("0")) == "0/1");
  CHECK(to_string(Q("-3/9")) == "-1/3");
  CHECK(inverse_power_of_two(10) == Q("1/1024"));
  CHECK_THROWS_AS(parse_scalar("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar(""), std::invalid_argument);
}

TEST_CASE("distance on the unit interval") {
  const Space x = Space::unit_interval();
  CHECK(distance(x, Point(0, 1), Point(0, 1)) == 0);
  CHECK(distance(x, Point(0, 1), Point(1, 2)) == Q("1/2"));
  CHECK(distance(x, Point(1, 2), Point(0, 1)) == Q("1/2"));
}

TEST_CASE("distance on finite-grid(4) matches brute-force grid enumeration") {
  const Space grid = Space::finite_grid(4);
  const auto pts = grid.points();
  REQUIRE(pts.size() == 5);
  for (const Point& p : pts) {
    for (const Point& q : pts) CHECK(distance(grid, p, q) == abs_diff(p.x, q.x));
  }
  CHECK(distance(grid, Point(1, 4), Point(3, 4)) == Q("1/2"));
}

TEST_CASE("grid membership") {
  const Space grid = Space::finite_grid(4);
  CHECK(grid.contains(Point(1, 2)));
  CHECK_FALSE(grid.contains(Point(1, 3)));
  CHECK_FALSE(grid.contains(Point(5, 4)));
  CHECK(Space::unit_interval().contains(Point(1, 3)));
  CHECK(Space::unit_interval().dense_in_itself());
  CHECK_FALSE(grid.dense_in_itself());
  CHECK_THROWS_AS(Space::finite_grid(0), std::invalid_argument);
  CHECK_THROWS_AS(Space::unit_interval().points(), std::logic_error);
}

TEST_CASE("separation") {
  const Space x = Space::unit_interval();
  const std::vector<Point> pair{Point(0, 1), Point(1, 2)};
  CHECK(separation(x, pair) == Q("1/2"));
  const std::vector<Point> single{Point(0, 1)};
  CHECK(separation(x, single) == 1);
  CHECK(separation(x, std::span<const Point>{}) == 1);

  const std::vector<Point> triple{Point(1, 2), Point(0, 1), Point(1, 30)};
  Scalar brute = 1;
  for (std::size_t i = 0; i < triple.size(); ++i) {
    for (std::size_t j = i + 1; j < triple.size(); ++j) brute = std::min(brute, abs_diff(triple[i].x, triple[j].x));
  }
  CHECK(brute == Q("1/30"));
  CHECK(separation(x, triple) == brute);

  const std::vector<Point> repeated{Point(0, 1), Point(0, 1), Point(1, 4)};
  CHECK(separation(x, repeated) == Q("1/4"));
}
