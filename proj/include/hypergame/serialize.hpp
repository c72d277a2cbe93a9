#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hypergame/game.hpp"
#include "hypergame/transfer.hpp"

namespace hypergame {

using Json = nlohmann::ordered_json;

// Rationals are "p/q" strings; finite sets are sorted arrays of them.
Json to_json(const Scalar& q);
Json to_json(const FiniteCompact& set);
Json to_json(const ProductBall& ball);
Json to_json(const IncreasingBall& ball);
Json to_json(const LimitEstimate& estimate);
Json to_json(const Termination& termination);
Json to_json(const AffiliationTable& table);
Json to_json(const ParentMap& parents);

// {"stage", "k_ball", "k_tilde", "l_ball", "l_tilde", "affiliations", "parents", "dummy_bucket", "checks"}
Json to_json(const StageRecord& record, const std::vector<NamedCheck>& checks);

// Throw std::invalid_argument on schema violations.
Scalar scalar_from_json(const Json& j);
FiniteCompact set_from_json(const Json& j);
ProductBall product_ball_from_json(const Json& j);
IncreasingBall increasing_ball_from_json(const Json& j);

template <class Ball>
Ball ball_from_json(const Json& j);
template <>
ProductBall ball_from_json<ProductBall>(const Json& j);
template <>
IncreasingBall ball_from_json<IncreasingBall>(const Json& j);

// Ball literal as typed by a human: "([{0},{1/2}], 2, 1/10)". The index may be
// omitted: "([{0},{1/2}], 1/10)". Throws std::invalid_argument with the column
// of the first offending character.
struct BallLiteral {
  std::vector<FiniteCompact> prefix;
  std::size_t index = 0;
  Scalar radius;
};
BallLiteral parse_ball_literal(std::string_view text);
std::string format_ball(const ProductBall& ball);
std::string format_ball(const IncreasingBall& ball);

template <class Ball>
Json transcript_to_json(const Transcript<Ball>& t);

}  // namespace hypergame
