#include <doctest.h>

#include "hypergame/serialize.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("balls round-trip through JSON") {
  const ProductBall p = PB({S({"0"}), S({"1/2"}), FiniteCompact{}}, "1/400");
  const Json jp = to_json(p);
  CHECK(jp["kind"] == "product");
  CHECK(jp["index"] == 3);
  CHECK(jp["radius"] == "1/400");
  CHECK(product_ball_from_json(jp) == p);

  const IncreasingBall i = IB({S({"0"}), S({"0", "1/30"})}, "1/200");
  CHECK(increasing_ball_from_json(to_json(i)) == i);
  CHECK_THROWS_AS(product_ball_from_json(to_json(i)), std::invalid_argument);

  Json wrong_index = jp;
  wrong_index["index"] = 2;
  CHECK_THROWS_AS(product_ball_from_json(wrong_index), std::invalid_argument);
  CHECK_THROWS_AS(scalar_from_json(Json(0.5)), std::invalid_argument);
}

TEST_CASE("stage record JSON layout") {
  const ComposedGame game = worked_chain();
  const Json j = to_json(game.records[0], check_star(game.records[0]));
  CHECK(j["stage"] == 1);
  CHECK(j["affiliations"]["l"]["1/30"] == Json::array({3, 2}));
  CHECK(j["parents"]["reverse"]["map"]["1/30"] == "0/1");
  CHECK(j["dummy_bucket"] == Json::array({"1/30"}));
  CHECK(j["checks"]["star1.k"] == true);
}

TEST_CASE("ball literals") {
  const BallLiteral lit = parse_ball_literal("([{0},{1/2}], 2, 1/10)");
  CHECK(lit.index == 2);
  CHECK(lit.prefix == std::vector<FiniteCompact>{S({"0"}), S({"1/2"})});
  CHECK(lit.radius == Q("1/10"));

  const BallLiteral short_form = parse_ball_literal(" ( [ {0, 1/30}, {} ] , 1/200 ) ");
  CHECK(short_form.prefix == std::vector<FiniteCompact>{S({"0", "1/30"}), FiniteCompact{}});
  CHECK(short_form.radius == Q("1/200"));

  CHECK_THROWS_AS(parse_ball_literal("([{0},{1/2}], 3, 1/10)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ball_literal("([{0}], 1/10"), std::invalid_argument);
  try {
    parse_ball_literal("([{0},{x}], 1/10)");
    FAIL("accepted a malformed literal");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }

  CHECK(format_ball(PB({S({"0"}), S({"1/2"}), S({"1/30"})}, "1/400")) == "([{0},{1/2},{1/30}], 3, 1/400)");
}

TEST_CASE("transcripts serialize deterministically") {
  auto p1 = scripted_player<ProductBall>({PB({S({"0"})}, "1/10")});
  auto p2 = shrink_player<ProductBall>();
  const Json j = transcript_to_json(play(*p1, *p2, 1));
  REQUIRE(j["stages"].size() == 1);
  CHECK(j["stages"][0]["player2"]["radius"] == "1/20");
  CHECK(j["limit"]["error"] == "1/20");
  CHECK(j["checks"]["radii_strictly_decreasing"] == true);
}
