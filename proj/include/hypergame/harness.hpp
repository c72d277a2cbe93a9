#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hypergame/game.hpp"
#include "hypergame/serialize.hpp"
#include "hypergame/transfer.hpp"

namespace hypergame {

// A game played through a composed strategy, with both games' stage records.
struct ComposedGame {
  Direction direction = Direction::fig1;
  std::vector<StageRecord> records;
  Termination termination;

  // Moves in play order: fig1 K^N game is K, L̃, K, L̃, ...; fig2 is L̃, K, ...
  std::vector<ProductBall> product_moves() const;
  // fig1 K↗^N game is K̃, L, K̃, L, ...; fig2 is L, K̃, ...
  std::vector<IncreasingBall> increasing_moves() const;
};

const char* to_string(Direction direction);
Direction parse_direction(std::string_view text);

// fig1: the real game is K^N, Player II is driven by a K↗^N strategy.
ComposedGame play_fig1(Strategy<ProductBall>& player_one, std::unique_ptr<Strategy<IncreasingBall>> inner,
                       std::size_t rounds, Fault fault = Fault::none);
// fig2: the real game is K↗^N, Player II is driven by a K^N strategy.
ComposedGame play_fig2(Strategy<IncreasingBall>& player_one, std::unique_ptr<Strategy<ProductBall>> inner,
                       std::size_t rounds, Fault fault = Fault::none);

struct UnionAgreement {
  std::vector<Scalar> per_stage;  // d(⋃_{n<=a} K_n, K̃_ã) at each stage
  bool prefix_containment = true; // ⋃_{j<=n} K_j ⊆ K̃_n for all n <= a, all stages
  Scalar worst() const;
};

UnionAgreement union_agreement(std::span<const StageRecord> records);

struct VerifyOptions {
  bool inner_decay = false;  // expect the inner strategy's radius at stage m to be <= 2^-m
  Fault fault = Fault::none; // forwarded to the boundary probe
};

struct StageVerification {
  std::size_t stage = 0;
  std::vector<NamedCheck> checks;
  bool pass() const;
};

struct Verification {
  std::vector<StageVerification> stages;
  std::vector<NamedCheck> global;
  bool pass() const;
  std::vector<std::string> failing_checks() const;
};

// Recomputes every finite-stage invariant of the construction from the
// recorded balls: validity, (⋆), both claims, affiliation order, bucket
// partition, K_1 = K̃_1, all nestings, radius contraction, union agreement,
// parent maps, ancestor-chain bounds, and optionally the decay schedule.
Verification verify_composed(const ComposedGame& game, const VerifyOptions& options = {});

// A forward transfer whose child sits exactly at the parent threshold.
bool closed_threshold_probe(Fault fault);

Json composed_to_json(const ComposedGame& game, const Verification& verification);

}  // namespace hypergame
