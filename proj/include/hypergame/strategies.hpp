#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "hypergame/game.hpp"

namespace hypergame {

// How a random mover grows the ball index from move to move.
enum class Growth { none, random, extend_by_2 };

Growth parse_growth(std::string_view name);
const char* to_string(Growth growth);

// Stage of the next move given the number of moves already played.
inline std::size_t stage_of(std::size_t history_size) { return history_size / 2 + 1; }

// Seeded random mover for either seat. Each reply perturbs the previous
// centers by at most a quarter of the previous radius, sometimes adds a
// satellite point next to an existing one, extends the index according to
// `growth` and shrinks the radius by a factor in [1/8, 1/2]. Every candidate is
// re-validated; after repeated rejections it falls back to the unperturbed
// centers at half the radius, so it never plays an illegal move.
template <class Ball>
std::unique_ptr<Strategy<Ball>> random_player1(std::uint64_t seed, Growth growth = Growth::random);

// Replays the opponent's last ball at half the radius.
template <class Ball>
std::unique_ptr<Strategy<Ball>> shrink_player();

// Plays the given balls in order; fails once they run out.
template <class Ball>
std::unique_ptr<Strategy<Ball>> scripted_player(std::vector<Ball> moves);

using Schedule = std::function<Scalar(std::size_t stage)>;

// 2^-m
Schedule halving_schedule();

// Plays the inner move with its radius capped at schedule(stage).
template <class Ball>
std::unique_ptr<Strategy<Ball>> decay_wrapper(std::unique_ptr<Strategy<Ball>> inner,
                                              Schedule schedule = halving_schedule());

struct NullCertificate {
  std::size_t stage;
  Scalar measure;  // exact measure of (⋃K_n)[reply radius] in [0,1]
  Scalar bound;    // epsilon * 2^-stage
};

// Player II in the K^N game on [0,1] that keeps Player I's centers and picks a
// radius small enough that the dilated union has measure <= epsilon * 2^-m.
class NullPlayer2 final : public Strategy<ProductBall> {
 public:
  explicit NullPlayer2(Scalar epsilon);

  ProductBall move(std::span<const ProductBall> history) override;
  nlohmann::json annotation() const override;

  const std::vector<NullCertificate>& certificates() const { return certificates_; }
  const Scalar& epsilon() const { return epsilon_; }

 private:
  Scalar epsilon_;
  std::vector<NullCertificate> certificates_;
};

std::unique_ptr<NullPlayer2> null_player2(Scalar epsilon);

// Builds a strategy from a CLI spec:
//   random[:seed=N][,growth=none|random|extend-by-2]
//   shrink
//   null[:epsilon=p/q]         (product game only)
//   script:FILE                (JSON array of balls)
// A random mover uses its explicit seed (or `default_seed`) plus `seed_offset`.
// Throws std::invalid_argument on a malformed or unknown spec.
template <class Ball>
std::unique_ptr<Strategy<Ball>> make_strategy(std::string_view spec, std::uint64_t default_seed,
                                              std::uint64_t seed_offset = 0);

}  // namespace hypergame
