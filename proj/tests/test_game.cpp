#include <doctest.h>

#include "support.hpp"

using namespace testing;

namespace {

// Replies with the previous ball at twice the radius.
class Widener final : public Strategy<ProductBall> {
 public:
  ProductBall move(std::span<const ProductBall> history) override {
    ProductBall b = history.back();
    b.radius *= 2;
    return b;
  }
};

// Replies far away from the transferred move.
class Stray final : public Strategy<IncreasingBall> {
 public:
  IncreasingBall move(std::span<const IncreasingBall> history) override {
    IncreasingBall b = history.back();
    b.prefix.assign(b.index(), S({"1"}));
    b.radius /= 4;
    return b;
  }
};

template <class Ball>
bool all_nested(std::span<const Ball> moves) {
  for (std::size_t i = 1; i < moves.size(); ++i) {
    if (!legal_nesting(moves[i], moves[i - 1])) return false;
  }
  return true;
}

bool star_passes(const StageRecord& rec) {
  const auto checks = check_star(rec);
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.pass; });
}

}  // namespace

TEST_CASE("referee: random Player I against a shrinking Player II") {
  auto p1 = random_player1<ProductBall>(11);
  auto p2 = shrink_player<ProductBall>();
  const Transcript<ProductBall> t = play(*p1, *p2, 3);
  CHECK(t.termination.completed);
  REQUIRE(t.moves.size() == 6);
  const auto balls = t.balls();
  CHECK(all_nested<ProductBall>(balls));
  CHECK(radii_strictly_decreasing<ProductBall>(balls));
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    CHECK(t.moves[i].stage == i / 2 + 1);
    CHECK(t.moves[i].player == (i % 2 == 0 ? Role::player_one : Role::player_two));
  }
}

TEST_CASE("referee: shrink-in-place is always legal") {
  const ProductBall b = PB({S({"0"}), S({"1/2"})}, "1/10");
  CHECK(legal_nesting(PB(b.prefix, "1/20"), b));
}

TEST_CASE("referee: a larger radius loses at stage 1") {
  auto p1 = scripted_player<ProductBall>({PB({S({"0"})}, "1/10")});
  Widener p2;
  const Transcript<ProductBall> t = play(*p1, p2, 4);
  CHECK_FALSE(t.termination.completed);
  CHECK(t.termination.stage == 1);
  REQUIRE(t.termination.loser.has_value());
  CHECK(*t.termination.loser == Role::player_two);
  CHECK(t.termination.reason.find("not nested") != std::string::npos);
  CHECK(t.moves.size() == 1);
}

TEST_CASE("referee: an exhausted script is a strategy failure") {
  auto p1 = scripted_player<ProductBall>({PB({S({"0"})}, "1/10")});
  auto p2 = shrink_player<ProductBall>();
  const Transcript<ProductBall> t = play(*p1, *p2, 2);
  REQUIRE(t.termination.loser.has_value());
  CHECK(*t.termination.loser == Role::player_one);
  CHECK(t.termination.stage == 2);
  CHECK(t.termination.reason.find("strategy failure") == 0);
}

TEST_CASE("referee: invalid balls lose") {
  auto p1 = scripted_player<ProductBall>({PB({S({"0"}), S({"1/2"})}, "1/5")});
  auto p2 = shrink_player<ProductBall>();
  const Transcript<ProductBall> t = play(*p1, *p2, 1);
  CHECK(*t.termination.loser == Role::player_one);
  CHECK(t.termination.reason.find("[separation]") != std::string::npos);
  CHECK_THROWS_AS(play(*p1, *p2, 0), std::invalid_argument);
}

TEST_CASE("composed strategy on the worked stage 1") {
  auto p1 = scripted_player<ProductBall>({PB({S({"0"}), S({"1/2"})}, "1/10")});
  auto inner = scripted_player<IncreasingBall>({IB({S({"0"}), S({"0", "1/30", "1/2"})}, "1/200")});
  auto composed = compose_for_product_game(std::move(inner));
  const Transcript<ProductBall> t = play(*p1, *composed, 1);
  REQUIRE(t.termination.completed);
  CHECK(t.moves.back().ball == PB({S({"0"}), S({"1/2"}), S({"1/30"})}, "1/400"));
  REQUIRE(composed->records().size() == 1);
  CHECK(star_passes(composed->records()[0]));
  CHECK(composed->shadow().size() == 2);
}

TEST_CASE("composed strategy: one round passes (⋆) for any inner strategy") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto p1 = random_player1<ProductBall>(seed);
    const ComposedGame game = play_fig1(*p1, random_player1<IncreasingBall>(seed + 100), 1);
    REQUIRE(game.records.size() == 1);
    CHECK(star_passes(game.records[0]));
  }
}

TEST_CASE("composed strategy never emits a move after an illegal inner reply") {
  auto p1 = random_player1<ProductBall>(5);
  const ComposedGame game = play_fig1(*p1, std::make_unique<Stray>(), 3);
  CHECK_FALSE(game.termination.completed);
  REQUIRE(game.termination.loser.has_value());
  CHECK(*game.termination.loser == Role::player_two);
  CHECK(game.termination.reason.find("inner strategy") != std::string::npos);
  CHECK(game.records.empty());
}

TEST_CASE("mirror composition, stage 1") {
  const ReverseResult rev = reverse_transfer_first(IB({S({"0"}), S({"0", "1/2"})}, "1/8"));
  CHECK(rev.ball == PB({S({"0"}), S({"1/2"})}, "1/16"));

  auto p1 = scripted_player<IncreasingBall>({IB({S({"0"}), S({"0", "1/2"})}, "1/8")});
  auto inner = scripted_player<ProductBall>({PB({S({"0"}), S({"1/2"})}, "1/40")});
  const ComposedGame game = play_fig2(*p1, std::move(inner), 1);
  REQUIRE(game.termination.completed);
  const StageRecord& rec = game.records.at(0);
  CHECK(rec.l_tilde == rev.ball);
  // r̃ = min(s̃ - r, r/2) = min(3/80, 1/80)
  CHECK(rec.k_tilde.radius == Q("1/80"));
  CHECK(validate(rec.k_tilde).empty());
  CHECK(legal_nesting(rec.k_tilde, rec.l));
  CHECK(star_passes(rec));
}

TEST_CASE("mirror composition with a shrinking inner strategy") {
  auto p1 = random_player1<IncreasingBall>(4);
  const ComposedGame game = play_fig2(*p1, shrink_player<ProductBall>(), 6);
  REQUIRE(game.termination.completed);
  for (const auto& rec : game.records) CHECK(star_passes(rec));
  const auto moves = game.increasing_moves();
  CHECK(all_nested<IncreasingBall>(moves));
}

TEST_CASE("limit estimates") {
  const std::vector<ProductBall> one{PB({S({"0"}), S({"1/2"})}, "1/10")};
  const LimitEstimate base = limit_estimate<ProductBall>(one);
  CHECK(base.centers == one[0].prefix);
  CHECK(base.error == Q("1/10"));
  CHECK_THROWS_AS(limit_estimate<ProductBall>(std::span<const ProductBall>{}), std::invalid_argument);

  const auto k_moves = worked_player_one();
  const LimitEstimate est = limit_estimate<ProductBall>(k_moves);
  CHECK(est.centers.at(0) == S({"0"}));
  CHECK(est.error == Q("1/2000"));
  CHECK(limit_stable<ProductBall>(k_moves, est));
}

TEST_CASE("limit estimates settle as rounds are added") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto a1 = random_player1<ProductBall>(seed);
    auto a2 = shrink_player<ProductBall>();
    const auto shorter = play(*a1, *a2, 4).balls();
    auto b1 = random_player1<ProductBall>(seed);
    auto b2 = shrink_player<ProductBall>();
    const auto longer = play(*b1, *b2, 5).balls();
    REQUIRE(std::equal(shorter.begin(), shorter.end(), longer.begin()));
    const LimitEstimate now = limit_estimate<ProductBall>(shorter);
    const LimitEstimate next = limit_estimate<ProductBall>(longer);
    for (std::size_t n = 1; n <= now.centers.size(); ++n) {
      CHECK(brute_hausdorff(now.centers[n - 1], next.centers[n - 1]) <= now.error);
    }
    CHECK(limit_stable<ProductBall>(longer, next));
  }
}

TEST_CASE("union agreement") {
  const ComposedGame game = worked_chain();
  const UnionAgreement ua = union_agreement(game.records);
  REQUIRE(ua.per_stage.size() == 2);
  CHECK(ua.per_stage[0] == 0);
  CHECK(ua.per_stage[1] == 0);
  CHECK(ua.prefix_containment);
  CHECK(game.records[1].k_tilde.prefix.back() == S({"0", "1/30", "1/2", "3/4"}));

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto p1 = random_player1<ProductBall>(seed);
    const ComposedGame g = play_fig1(*p1, shrink_player<IncreasingBall>(), 1);
    CHECK(union_agreement(g.records).per_stage.at(0) == 0);
  }

  std::vector<StageRecord> tampered = game.records;
  tampered[1].k_tilde.prefix.back() = S({"0", "1/30", "1/2"});
  const UnionAgreement bad = union_agreement(tampered);
  CHECK(bad.per_stage[1] > 0);
  CHECK(bad.worst() == bad.per_stage[1]);
  CHECK_FALSE(bad.prefix_containment);
}
