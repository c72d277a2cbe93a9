#include "hypergame/serialize.hpp"

#include <cctype>
#include <stdexcept>

namespace hypergame {

Json to_json(const Scalar& q) { return to_string(q); }

Json to_json(const FiniteCompact& set) {
  Json out = Json::array();
  for (const Point& p : set) out.push_back(to_string(p.x));
  return out;
}

namespace {

template <class Ball>
Json ball_json(const Ball& ball) {
  Json prefix = Json::array();
  for (const auto& set : ball.prefix) prefix.push_back(to_json(set));
  Json out;
  out["kind"] = kVariantName<Ball>;
  out["prefix"] = std::move(prefix);
  out["index"] = ball.index();
  out["radius"] = to_string(ball.radius);
  return out;
}

template <class Ball>
Ball ball_parse(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("ball must be a JSON object");
  if (!j.contains("kind") || j.at("kind") != kVariantName<Ball>) {
    throw std::invalid_argument(std::string("ball kind must be \"") + kVariantName<Ball> + "\"");
  }
  if (!j.contains("prefix") || !j.at("prefix").is_array()) throw std::invalid_argument("ball prefix must be an array");
  Ball ball;
  for (const auto& s : j.at("prefix")) ball.prefix.push_back(set_from_json(s));
  if (!j.contains("radius")) throw std::invalid_argument("ball radius missing");
  ball.radius = scalar_from_json(j.at("radius"));
  if (j.contains("index")) {
    if (!j.at("index").is_number_unsigned() || j.at("index").get<std::size_t>() != ball.index()) {
      throw std::invalid_argument("ball index must equal the prefix length");
    }
  }
  return ball;
}

std::string short_rational(const Scalar& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

template <class Ball>
std::string ball_text(const Ball& ball) {
  std::string out = "([";
  for (std::size_t n = 0; n < ball.prefix.size(); ++n) {
    if (n) out += ",";
    out += "{";
    bool first = true;
    for (const Point& p : ball.prefix[n]) {
      if (!first) out += ",";
      out += short_rational(p.x);
      first = false;
    }
    out += "}";
  }
  out += "], " + std::to_string(ball.index()) + ", " + short_rational(ball.radius) + ")";
  return out;
}

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  BallLiteral parse() {
    BallLiteral lit;
    skip();
    const bool paren = accept('(');
    lit.prefix = prefix();
    expect(',');
    Scalar first = rational();
    if (accept(',')) {
      if (first.get_den() != 1 || first < 1) fail("index must be a positive integer");
      lit.index = first.get_num().get_ui();
      lit.radius = rational();
    } else {
      lit.index = lit.prefix.size();
      lit.radius = std::move(first);
    }
    if (paren) expect(')');
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    if (lit.index != lit.prefix.size()) {
      fail("index " + std::to_string(lit.index) + " does not match the " + std::to_string(lit.prefix.size()) +
           " sets given");
    }
    return lit;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("ball literal, column " + std::to_string(pos_ + 1) + ": " + why);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Scalar rational() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
    if (start == pos_) fail("expected a rational p/q");
    try {
      return parse_scalar(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  FiniteCompact set() {
    expect('{');
    std::vector<Point> pts;
    if (!accept('}')) {
      do {
        pts.emplace_back(rational());
      } while (accept(','));
      expect('}');
    }
    return FiniteCompact(std::move(pts));
  }

  std::vector<FiniteCompact> prefix() {
    expect('[');
    std::vector<FiniteCompact> sets;
    if (!accept(']')) {
      do {
        sets.push_back(set());
      } while (accept(','));
      expect(']');
    }
    return sets;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Json to_json(const ProductBall& ball) { return ball_json(ball); }
Json to_json(const IncreasingBall& ball) { return ball_json(ball); }

Json to_json(const LimitEstimate& estimate) {
  Json centers = Json::array();
  for (const auto& set : estimate.centers) centers.push_back(to_json(set));
  Json out;
  out["centers"] = std::move(centers);
  out["error"] = to_string(estimate.error);
  return out;
}

Json to_json(const Termination& t) {
  Json out;
  out["completed"] = t.completed;
  out["stage"] = t.stage;
  out["loser"] = t.loser ? Json(to_string(*t.loser)) : Json(nullptr);
  out["reason"] = t.reason;
  return out;
}

Json to_json(const AffiliationTable& table) {
  Json out = Json::object();
  for (const auto& [p, aff] : table) out[to_string(p.x)] = Json::array({aff.first, aff.second});
  return out;
}

Json to_json(const ParentMap& parents) {
  Json map = Json::object();
  for (const auto& [child, parent] : parents.links) map[to_string(child.x)] = to_string(parent.x);
  Json out;
  out["threshold"] = parents.empty() && parents.threshold == 0 ? Json(nullptr) : Json(to_string(parents.threshold));
  out["map"] = std::move(map);
  return out;
}

Json to_json(const StageRecord& rec, const std::vector<NamedCheck>& checks) {
  Json out;
  out["stage"] = rec.stage;
  out["k_ball"] = to_json(rec.k);
  out["k_tilde"] = to_json(rec.k_tilde);
  out["l_ball"] = to_json(rec.l);
  out["l_tilde"] = to_json(rec.l_tilde);
  out["affiliations"] = {{"k", to_json(rec.k_affiliations)}, {"l", to_json(rec.l_affiliations)}};
  out["parents"] = {{"forward", to_json(rec.forward_parents)}, {"reverse", to_json(rec.reverse_parents)}};
  Json dummies = Json::array();
  for (const Point& p : rec.dummy_points) dummies.push_back(to_string(p.x));
  out["dummy_bucket"] = std::move(dummies);
  Json c = Json::object();
  for (const auto& check : checks) c[check.name] = check.pass;
  out["checks"] = std::move(c);
  return out;
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw std::invalid_argument("rational must be a \"p/q\" string");
}

FiniteCompact set_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("finite set must be an array of rationals");
  std::vector<Point> pts;
  for (const auto& v : j) pts.emplace_back(scalar_from_json(v));
  return FiniteCompact(std::move(pts));
}

ProductBall product_ball_from_json(const Json& j) { return ball_parse<ProductBall>(j); }
IncreasingBall increasing_ball_from_json(const Json& j) { return ball_parse<IncreasingBall>(j); }

template <>
ProductBall ball_from_json<ProductBall>(const Json& j) {
  return product_ball_from_json(j);
}
template <>
IncreasingBall ball_from_json<IncreasingBall>(const Json& j) {
  return increasing_ball_from_json(j);
}

BallLiteral parse_ball_literal(std::string_view text) { return LiteralParser(text).parse(); }

std::string format_ball(const ProductBall& ball) { return ball_text(ball); }
std::string format_ball(const IncreasingBall& ball) { return ball_text(ball); }

template <class Ball>
Json transcript_to_json(const Transcript<Ball>& t) {
  Json stages = Json::array();
  for (const auto& m : t.moves) {
    if (m.player == Role::player_one) {
      Json s;
      s["stage"] = m.stage;
      stages.push_back(std::move(s));
    }
    Json& s = stages.back();
    s[to_string(m.player)] = to_json(m.ball);
    if (!m.annotation.is_null()) s[std::string(to_string(m.player)) + "_certificate"] = Json::parse(m.annotation.dump());
  }

  const auto balls = t.balls();
  const std::span<const Ball> moves(balls);
  Json out;
  out["variant"] = kVariantName<Ball>;
  out["stages"] = std::move(stages);
  if (!balls.empty()) {
    const LimitEstimate est = limit_estimate(moves);
    out["limit"] = to_json(est);
    out["checks"] = {{"completed", t.termination.completed},
                     {"radii_strictly_decreasing", radii_strictly_decreasing(moves)},
                     {"limit_stable", limit_stable(moves, est)}};
  } else {
    out["limit"] = nullptr;
    out["checks"] = {{"completed", t.termination.completed}};
  }
  out["termination"] = to_json(t.termination);
  return out;
}

template Json transcript_to_json<ProductBall>(const Transcript<ProductBall>&);
template Json transcript_to_json<IncreasingBall>(const Transcript<IncreasingBall>&);

}  // namespace hypergame
