#include "hypergame/strategies.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "hypergame/serialize.hpp"

namespace hypergame {

Growth parse_growth(std::string_view name) {
  if (name == "none") return Growth::none;
  if (name == "random") return Growth::random;
  if (name == "extend-by-2") return Growth::extend_by_2;
  throw std::invalid_argument("unknown growth profile '" + std::string(name) + "'");
}

const char* to_string(Growth growth) {
  switch (growth) {
    case Growth::none: return "none";
    case Growth::random: return "random";
    case Growth::extend_by_2: return "extend-by-2";
  }
  return "?";
}

namespace {

constexpr bool kIncreasing(const ProductBall*) { return false; }
constexpr bool kIncreasing(const IncreasingBall*) { return true; }

template <class Ball>
constexpr bool is_increasing_ball = kIncreasing(static_cast<const Ball*>(nullptr));

template <class Ball>
class RandomMover final : public Strategy<Ball> {
 public:
  RandomMover(std::uint64_t seed, Growth growth) : rng_(seed), growth_(growth) {}

  Ball move(std::span<const Ball> history) override {
    if (history.empty()) return opening();
    const Ball& outer = history.back();
    // Proposals are nested by construction (shifts <= R/4, satellites within
    // R - r of a host in the same set, r <= R/2); only validity can fail.
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      Ball candidate = propose(outer);
      if (validate(candidate).empty()) return candidate;
    }
    Ball fallback = outer;
    fallback.radius = outer.radius / 2;
    return fallback;
  }

 private:
  static constexpr int kAttempts = 16;

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(int one_in) { return uniform(1, one_in) == 1; }

  static bool in_unit(const Scalar& x) { return x >= 0 && x <= 1; }

  static bool far_from(const Scalar& q, const std::vector<Point>& pts, const Scalar& gap) {
    for (const Point& p : pts) {
      if ((q < p.x ? Scalar(p.x - q) : Scalar(q - p.x)) < gap) return false;
    }
    return true;
  }

  Ball opening() {
    const int a = uniform(1, 3);
    const int count = uniform(a, 2 * a);
    std::vector<int> slots(33);
    for (int k = 0; k <= 32; ++k) slots[k] = k;
    std::shuffle(slots.begin(), slots.end(), rng_);

    std::vector<std::vector<Point>> chunks(a);
    for (int i = 0; i < count; ++i) chunks[uniform(0, a - 1)].emplace_back(slots[i], 32);

    Ball ball;
    for (int n = 0; n < a; ++n) {
      if constexpr (is_increasing_ball<Ball>) {
        std::vector<Point> cumulative = n ? std::vector<Point>(ball.prefix.back().begin(), ball.prefix.back().end())
                                          : std::vector<Point>{};
        cumulative.insert(cumulative.end(), chunks[n].begin(), chunks[n].end());
        ball.prefix.emplace_back(std::move(cumulative));
      } else {
        ball.prefix.emplace_back(chunks[n]);
      }
    }
    // separation >= 1/32 > 3r
    ball.radius = rational(uniform(4, 8), 8 * 128);
    return ball;
  }

  Ball propose(const Ball& outer) {
    const Scalar& big = outer.radius;
    const Scalar r = big * rational(uniform(8, 32), 64);
    const Scalar quarter = big / 4;

    // Consistent perturbation of every center (keeps increasing prefixes increasing).
    const FiniteCompact centers = union_of(outer.prefix);
    std::vector<std::pair<Point, Point>> moved;
    for (const Point& p : centers) {
      Scalar q = p.x + quarter * rational(uniform(-16, 16), 16);
      moved.emplace_back(p, in_unit(q) ? Point(q) : p);
    }
    auto image = [&](const Point& p) {
      auto it = std::lower_bound(moved.begin(), moved.end(), p,
                                 [](const auto& e, const Point& x) { return e.first < x; });
      return it->second;
    };

    std::vector<std::vector<Point>> sets;
    for (const auto& set : outer.prefix) {
      std::vector<Point> pts;
      for (const Point& p : set) pts.push_back(image(p));
      sets.push_back(std::move(pts));
    }

    // Satellites: a new point at distance t from a host with 3r + R/4 <= t <= R - r.
    if (r * 8 <= big) {
      const Scalar lo = 3 * r + quarter;
      const Scalar hi = big - r;
      for (const Point& host : centers) {
        if (!coin(4)) continue;
        const Scalar t = lo + (hi - lo) * rational(uniform(0, 16), 16);
        Scalar sat = coin(2) ? Scalar(host.x + t) : Scalar(host.x - t);
        if (!in_unit(sat)) sat = 2 * host.x - sat;
        if (!in_unit(sat)) continue;
        std::size_t home = 0;
        while (!outer.prefix[home].contains(host)) ++home;
        if constexpr (is_increasing_ball<Ball>) {
          const std::size_t from = static_cast<std::size_t>(uniform(static_cast<int>(home), static_cast<int>(sets.size()) - 1));
          for (std::size_t n = from; n < sets.size(); ++n) sets[n].emplace_back(sat);
        } else {
          sets[home].emplace_back(sat);
        }
      }
    }

    int extra = 0;
    switch (growth_) {
      case Growth::none: break;
      case Growth::random: extra = uniform(0, 2); break;
      case Growth::extend_by_2: extra = 2; break;
    }
    std::vector<Point> taken;
    for (const auto& s : sets) taken.insert(taken.end(), s.begin(), s.end());
    const Scalar gap = 4 * r;
    for (int e = 0; e < extra; ++e) {
      const int wanted = growth_ == Growth::extend_by_2 ? 2 : uniform(0, 2);
      std::vector<Point> fresh;
      for (int i = 0; i < wanted; ++i) {
        for (int tries = 0; tries < 8; ++tries) {
          Scalar q = rational(uniform(0, 1 << 16), 1 << 16);
          if (far_from(q, taken, gap)) {
            taken.emplace_back(q);
            fresh.emplace_back(std::move(q));
            break;
          }
        }
      }
      if constexpr (is_increasing_ball<Ball>) {
        std::vector<Point> next = sets.back();
        next.insert(next.end(), fresh.begin(), fresh.end());
        sets.push_back(std::move(next));
      } else {
        sets.push_back(std::move(fresh));
      }
    }

    Ball ball;
    for (auto& s : sets) ball.prefix.emplace_back(std::move(s));
    ball.radius = r;
    return ball;
  }

  std::mt19937_64 rng_;
  Growth growth_;
};

template <class Ball>
class ShrinkPlayer final : public Strategy<Ball> {
 public:
  Ball move(std::span<const Ball> history) override {
    if (history.empty()) throw StrategyFailure("shrink only replies; it cannot open the game");
    Ball reply = history.back();
    reply.radius = reply.radius / 2;
    return reply;
  }
};

template <class Ball>
class ScriptedPlayer final : public Strategy<Ball> {
 public:
  explicit ScriptedPlayer(std::vector<Ball> moves) : moves_(std::move(moves)) {}

  Ball move(std::span<const Ball>) override {
    if (next_ >= moves_.size()) throw StrategyFailure("script exhausted after " + std::to_string(next_) + " moves");
    return moves_[next_++];
  }

 private:
  std::vector<Ball> moves_;
  std::size_t next_ = 0;
};

template <class Ball>
class DecayWrapper final : public Strategy<Ball> {
 public:
  DecayWrapper(std::unique_ptr<Strategy<Ball>> inner, Schedule schedule)
      : inner_(std::move(inner)), schedule_(std::move(schedule)) {}

  Ball move(std::span<const Ball> history) override {
    Ball ball = inner_->move(history);
    const Scalar cap = schedule_(stage_of(history.size()));
    if (cap < ball.radius) ball.radius = cap;
    return ball;
  }

  nlohmann::json annotation() const override { return inner_->annotation(); }

 private:
  std::unique_ptr<Strategy<Ball>> inner_;
  Schedule schedule_;
};

struct ParsedSpec {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::string rest;  // everything after ':' (script paths)
};

ParsedSpec parse_spec(std::string_view spec) {
  ParsedSpec out;
  const auto colon = spec.find(':');
  out.name = std::string(spec.substr(0, colon));
  if (colon == std::string_view::npos) return out;
  out.rest = std::string(spec.substr(colon + 1));
  std::size_t start = 0;
  while (start < out.rest.size()) {
    const std::size_t comma = std::min(out.rest.find(',', start), out.rest.size());
    const std::string item = out.rest.substr(start, comma - start);
    const auto eq = item.find('=');
    if (eq != std::string::npos) out.params.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    start = comma + 1;
  }
  return out;
}

template <class Ball>
std::vector<Ball> load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open script file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::invalid_argument("script file '" + path + "': " + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("script file must hold a JSON array of balls");
  std::vector<Ball> moves;
  for (const auto& b : j) moves.push_back(ball_from_json<Ball>(b));
  return moves;
}

}  // namespace

template <class Ball>
std::unique_ptr<Strategy<Ball>> random_player1(std::uint64_t seed, Growth growth) {
  return std::make_unique<RandomMover<Ball>>(seed, growth);
}

template <class Ball>
std::unique_ptr<Strategy<Ball>> shrink_player() {
  return std::make_unique<ShrinkPlayer<Ball>>();
}

template <class Ball>
std::unique_ptr<Strategy<Ball>> scripted_player(std::vector<Ball> moves) {
  return std::make_unique<ScriptedPlayer<Ball>>(std::move(moves));
}

Schedule halving_schedule() {
  return [](std::size_t stage) { return inverse_power_of_two(stage); };
}

template <class Ball>
std::unique_ptr<Strategy<Ball>> decay_wrapper(std::unique_ptr<Strategy<Ball>> inner, Schedule schedule) {
  return std::make_unique<DecayWrapper<Ball>>(std::move(inner), std::move(schedule));
}

NullPlayer2::NullPlayer2(Scalar epsilon) : epsilon_(std::move(epsilon)) {
  if (epsilon_ <= 0 || epsilon_ > 1) throw std::invalid_argument("epsilon must lie in (0,1]");
}

ProductBall NullPlayer2::move(std::span<const ProductBall> history) {
  if (history.empty()) throw StrategyFailure("null strategy only replies; it cannot open the game");
  const ProductBall& k = history.back();
  const std::size_t stage = stage_of(history.size());
  const FiniteCompact centers = union_of(k.prefix);
  const Scalar bound = epsilon_ * inverse_power_of_two(stage);

  Scalar radius = k.radius / 2;
  if (!centers.empty()) {
    const Scalar budget = bound / (2 * static_cast<unsigned long>(centers.size()));
    if (budget < radius) radius = budget;
  }
  ProductBall reply = k;
  reply.radius = radius;
  certificates_.push_back({stage, interval_measure(centers, radius), bound});
  return reply;
}

nlohmann::json NullPlayer2::annotation() const {
  if (certificates_.empty()) return nullptr;
  const auto& c = certificates_.back();
  return {{"stage", c.stage}, {"measure", to_string(c.measure)}, {"bound", to_string(c.bound)}};
}

std::unique_ptr<NullPlayer2> null_player2(Scalar epsilon) { return std::make_unique<NullPlayer2>(std::move(epsilon)); }

template <class Ball>
std::unique_ptr<Strategy<Ball>> make_strategy(std::string_view spec, std::uint64_t default_seed,
                                              std::uint64_t seed_offset) {
  const ParsedSpec parsed = parse_spec(spec);
  auto param = [&](const std::string& key) -> const std::string* {
    for (const auto& [k, v] : parsed.params) {
      if (k == key) return &v;
    }
    return nullptr;
  };
  auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : parsed.params) {
      if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }) == allowed.end()) {
        throw std::invalid_argument("strategy '" + parsed.name + "' has no parameter '" + k + "'");
      }
    }
    if (!parsed.rest.empty() && parsed.params.empty()) {
      throw std::invalid_argument("malformed parameters in strategy spec '" + std::string(spec) + "'");
    }
  };

  if (parsed.name == "random") {
    reject_unknown({"seed", "growth"});
    std::uint64_t seed = default_seed;
    if (const auto* s = param("seed")) {
      try {
        std::size_t used = 0;
        seed = std::stoull(*s, &used);
        if (used != s->size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw std::invalid_argument("seed must be a nonnegative integer, got '" + *s + "'");
      }
    }
    const Growth growth = param("growth") ? parse_growth(*param("growth")) : Growth::random;
    return random_player1<Ball>(seed + seed_offset, growth);
  }
  if (parsed.name == "shrink") {
    reject_unknown({});
    return shrink_player<Ball>();
  }
  if (parsed.name == "null") {
    if constexpr (is_increasing_ball<Ball>) {
      throw std::invalid_argument("the null strategy plays the product game only");
    } else {
      reject_unknown({"epsilon"});
      return null_player2(param("epsilon") ? parse_scalar(*param("epsilon")) : rational(1, 100));
    }
  }
  if (parsed.name == "script") {
    if (parsed.rest.empty()) throw std::invalid_argument("script strategy needs a file: script:FILE");
    return scripted_player<Ball>(load_script<Ball>(parsed.rest));
  }
  throw std::invalid_argument("unknown strategy '" + parsed.name + "'");
}

template std::unique_ptr<Strategy<ProductBall>> random_player1<ProductBall>(std::uint64_t, Growth);
template std::unique_ptr<Strategy<IncreasingBall>> random_player1<IncreasingBall>(std::uint64_t, Growth);
template std::unique_ptr<Strategy<ProductBall>> shrink_player<ProductBall>();
template std::unique_ptr<Strategy<IncreasingBall>> shrink_player<IncreasingBall>();
template std::unique_ptr<Strategy<ProductBall>> scripted_player<ProductBall>(std::vector<ProductBall>);
template std::unique_ptr<Strategy<IncreasingBall>> scripted_player<IncreasingBall>(std::vector<IncreasingBall>);
template std::unique_ptr<Strategy<ProductBall>> decay_wrapper<ProductBall>(std::unique_ptr<Strategy<ProductBall>>, Schedule);
template std::unique_ptr<Strategy<IncreasingBall>> decay_wrapper<IncreasingBall>(std::unique_ptr<Strategy<IncreasingBall>>,
                                                                                 Schedule);
template std::unique_ptr<Strategy<ProductBall>> make_strategy<ProductBall>(std::string_view, std::uint64_t, std::uint64_t);
template std::unique_ptr<Strategy<IncreasingBall>> make_strategy<IncreasingBall>(std::string_view, std::uint64_t,
                                                                                 std::uint64_t);

}  // namespace hypergame
