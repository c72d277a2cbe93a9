#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypergame/balls.hpp"
#include "hypergame/transfer.hpp"

namespace hypergame {

enum class Role { player_one, player_two };

inline const char* to_string(Role role) { return role == Role::player_one ? "player1" : "player2"; }

template <class Ball>
inline constexpr const char* kVariantName = "product";
template <>
inline constexpr const char* kVariantName<IncreasingBall> = "increasing";

// Raised by a strategy that cannot produce a move. The referee scores it as a loss.
class StrategyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A decision rule for one seat of a Banach-Mazur game on balls of type `Ball`.
template <class Ball>
class Strategy {
 public:
  virtual ~Strategy() = default;

  // `history` holds every move so far, starting with Player I's first move.
  // Player I is called with an empty history on the first turn.
  virtual Ball move(std::span<const Ball> history) = 0;

  // Certificate for the move just returned, or null.
  virtual nlohmann::json annotation() const { return nullptr; }
};

template <class Ball>
struct MoveRecord {
  Role player;
  std::size_t stage;
  Ball ball;
  nlohmann::json annotation;
};

struct Termination {
  bool completed = false;
  std::optional<Role> loser;
  std::size_t stage = 0;
  std::string reason;
};

template <class Ball>
struct Transcript {
  std::vector<MoveRecord<Ball>> moves;
  Termination termination;

  std::vector<Ball> balls() const {
    std::vector<Ball> out;
    out.reserve(moves.size());
    for (const auto& m : moves) out.push_back(m.ball);
    return out;
  }
};

// Referee: alternates Player I and Player II for `rounds` stages. A strategy
// failure, an invalid ball or a ball not legally nested in the previous move
// ends the game with that player as the loser.
template <class Ball>
Transcript<Ball> play(Strategy<Ball>& player_one, Strategy<Ball>& player_two, std::size_t rounds) {
  if (rounds == 0) throw std::invalid_argument("rounds must be positive");
  Transcript<Ball> t;
  std::vector<Ball> history;
  for (std::size_t stage = 1; stage <= rounds; ++stage) {
    for (Role role : {Role::player_one, Role::player_two}) {
      Strategy<Ball>& strategy = role == Role::player_one ? player_one : player_two;
      auto lose = [&](std::string reason) {
        t.termination = {false, role, stage, std::move(reason)};
      };
      Ball ball;
      try {
        ball = strategy.move(history);
      } catch (const StrategyFailure& e) {
        lose(std::string("strategy failure: ") + e.what());
        return t;
      } catch (const TransferError& e) {
        lose(std::string("strategy failure: ") + e.what());
        return t;
      }
      const ValidityReport report = validate(ball);
      if (!report.empty()) {
        std::string reason = "invalid move:";
        for (const auto& issue : report) reason += " [" + issue.check + "] " + issue.detail + ";";
        lose(std::move(reason));
        return t;
      }
      if (!history.empty() && !legal_nesting(ball, history.back())) {
        lose("illegal move: not nested in the previous move");
        return t;
      }
      history.push_back(ball);
      t.moves.push_back({role, stage, std::move(ball), strategy.annotation()});
    }
  }
  t.termination.completed = true;
  t.termination.stage = rounds;
  return t;
}

// Final-ball approximation of the limit sequence: centers at each index of the
// last move, each within `error` of the limit.
struct LimitEstimate {
  std::vector<FiniteCompact> centers;
  Scalar error;
};

template <class Ball>
LimitEstimate limit_estimate(std::span<const Ball> moves) {
  if (moves.empty()) throw std::invalid_argument("limit_estimate: empty transcript");
  return {moves.back().prefix, moves.back().radius};
}

template <class Ball>
LimitEstimate limit_estimate(const Transcript<Ball>& t) {
  const auto balls = t.balls();
  return limit_estimate(std::span<const Ball>(balls));
}

// Every earlier move's center at each of its indices lies within its radius of
// the estimate.
template <class Ball>
bool limit_stable(std::span<const Ball> moves, const LimitEstimate& est) {
  const Space space = Space::unit_interval();
  for (const Ball& ball : moves) {
    for (std::size_t n = 1; n <= ball.index() && n <= est.centers.size(); ++n) {
      if (hausdorff(space, est.centers[n - 1], ball.at(n)) > ball.radius) return false;
    }
  }
  return true;
}

template <class Ball>
bool radii_strictly_decreasing(std::span<const Ball> moves) {
  for (std::size_t i = 1; i < moves.size(); ++i) {
    if (!(moves[i].radius < moves[i - 1].radius)) return false;
  }
  return true;
}

// Player II in the K^N game driven by a K↗^N strategy (forward transfer,
// inner reply, reverse transfer).
class ProductGameTransfer final : public Strategy<ProductBall> {
 public:
  ProductGameTransfer(std::unique_ptr<Strategy<IncreasingBall>> inner, Fault fault = Fault::none)
      : inner_(std::move(inner)), fault_(fault) {}

  ProductBall move(std::span<const ProductBall> history) override;

  const std::vector<StageRecord>& records() const { return records_; }
  std::span<const IncreasingBall> shadow() const { return shadow_; }

 private:
  std::unique_ptr<Strategy<IncreasingBall>> inner_;
  Fault fault_;
  std::vector<IncreasingBall> shadow_;
  std::vector<StageRecord> records_;
};

// Player II in the K↗^N game driven by a K^N strategy (reverse transfer,
// inner reply, forward transfer).
class IncreasingGameTransfer final : public Strategy<IncreasingBall> {
 public:
  IncreasingGameTransfer(std::unique_ptr<Strategy<ProductBall>> inner, Fault fault = Fault::none)
      : inner_(std::move(inner)), fault_(fault) {}

  IncreasingBall move(std::span<const IncreasingBall> history) override;

  const std::vector<StageRecord>& records() const { return records_; }
  std::span<const ProductBall> shadow() const { return shadow_; }

 private:
  std::unique_ptr<Strategy<ProductBall>> inner_;
  Fault fault_;
  std::vector<ProductBall> shadow_;
  std::vector<StageRecord> records_;
};

std::unique_ptr<ProductGameTransfer> compose_for_product_game(std::unique_ptr<Strategy<IncreasingBall>> inner,
                                                              Fault fault = Fault::none);
std::unique_ptr<IncreasingGameTransfer> compose_for_increasing_game(std::unique_ptr<Strategy<ProductBall>> inner,
                                                                    Fault fault = Fault::none);

}  // namespace hypergame
