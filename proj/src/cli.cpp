#include "hypergame/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "hypergame/harness.hpp"
#include "hypergame/oracle.hpp"
#include "hypergame/serialize.hpp"
#include "hypergame/strategies.hpp"

namespace hypergame {

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Flat JSON object whose keys are long flag names: {"rounds": 8, "p1": "random:seed=3"}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool, bool, std::string) const override {
    Json out = Json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || opt->count() == 0) continue;
      const auto values = opt->results();
      if (values.size() == 1) {
        out[opt->get_lnames().front()] = values.front();
      } else {
        out[opt->get_lnames().front()] = values;
      }
    }
    return out.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j;
    try {
      j = Json::parse(input);
    } catch (const Json::parse_error& e) {
      throw CLI::ConversionError("config", e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config", "the config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.name = key;
      auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(text(v));
      } else {
        item.inputs.push_back(text(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }
};

struct Options {
  std::string space = "unit-interval";
  std::size_t rounds = 12;
  std::uint64_t seed = 1;
  std::string out_file;
  unsigned jobs = 1;
  std::size_t games = 1;
  std::string epsilon = "1/100";
  std::string variant = "product";
  std::string p1 = "random";
  std::string p2 = "shrink";
  std::string inner = "shrink";
  std::string direction = "fig1";
  bool decay = false;
  std::string fault = "none";
  std::vector<unsigned> grids = {5, 8};
  std::string growth = "random";
};

void require_interval(const Options& o) {
  if (o.space != "unit-interval") {
    throw UsageError("games are played on unit-interval only; finite grids serve the oracle (got '" + o.space + "')");
  }
}

Fault parse_fault(const std::string& name) {
  if (name == "none") return Fault::none;
  if (name == "skip-dummy-bucket") return Fault::skip_dummy_bucket;
  if (name == "open-parent-threshold") return Fault::open_parent_threshold;
  if (name == "rtilde-equals-r") return Fault::rtilde_equals_r;
  throw UsageError("unknown fault '" + name + "' for this command");
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << "\n";
}

// ---- oracle ----

std::vector<BallPair> nesting_pairs(unsigned n) {
  const Scalar third = rational(1, 3);
  const Scalar step = rational(1, n);
  const Point lo(0, 1), hi(1, 1), near(step);
  const ProductBall p_outer{{FiniteCompact{lo}, FiniteCompact{hi}}, third};
  const ProductBall p_inner{{FiniteCompact{near}, FiniteCompact{hi}}, Scalar(step / 3)};
  const ProductBall p_far{{FiniteCompact{hi}, FiniteCompact{lo}}, Scalar(step / 3)};
  const IncreasingBall i_outer{{FiniteCompact{lo}, FiniteCompact{lo, hi}}, third};
  const IncreasingBall i_inner{{FiniteCompact{near}, FiniteCompact{near, hi}}, Scalar(step / 3)};
  const IncreasingBall i_half{{FiniteCompact{lo}, FiniteCompact{lo, hi}}, Scalar(third / 2)};
  return {
      std::pair{p_inner, p_outer}, std::pair{p_outer, p_outer}, std::pair{p_far, p_outer},
      std::pair{i_inner, i_outer}, std::pair{i_half, i_outer}, std::pair{i_outer, i_outer},
  };
}

int cmd_oracle(const Options& o, std::ostream& out) {
  SetMetric metric;
  if (o.fault == "metric") {
    metric = [](const FiniteCompact&, const FiniteCompact&) { return Scalar(1); };
  } else if (o.fault != "none") {
    throw UsageError("oracle accepts --inject-fault metric only");
  }
  for (unsigned n : o.grids) {
    if (n == 0) throw UsageError("grid resolution must be positive");
    if (n + 1 > kMaxExhaustivePoints) {
      throw UsageError("finite-grid(" + std::to_string(n) + ") has " + std::to_string(n + 1) +
                       " points; exhaustive checks are bounded at " + std::to_string(kMaxExhaustivePoints));
    }
  }

  const std::vector<Scalar> radii = {rational(1, 8), rational(1, 4), rational(1, 2)};
  bool all = true;
  for (unsigned n : o.grids) {
    const Space grid = Space::finite_grid(n);
    const std::vector<Point> pts = grid.points();
    std::vector<OracleReport> reports = verify_hausdorff_axioms(grid, metric);
    reports.push_back(verify_characterization(grid, radii));
    const auto pairs = nesting_pairs(n);
    reports.push_back(verify_nesting_soundness(pts, pairs));
    for (const auto& r : reports) {
      all = all && r.pass();
      out << std::left << std::setw(8) << grid.name() << std::setw(18) << r.name << std::right << std::setw(10)
          << r.cases << " cases  " << (r.pass() ? "pass" : "FAIL (" + std::to_string(r.failures) + ")") << "\n";
      for (const auto& c : r.counterexamples) out << "    counterexample: " << c << "\n";
    }
  }
  out << (all ? "oracle: pass" : "oracle: FAIL") << "\n";
  return all ? kPass : kFail;
}

// ---- play ----

template <class Ball>
int play_variant(const Options& o, std::ostream& out) {
  auto p1 = make_strategy<Ball>(o.p1, o.seed, 0);
  auto p2 = make_strategy<Ball>(o.p2, o.seed, 1);
  const Transcript<Ball> t = play(*p1, *p2, o.rounds);

  out << "stage  player   index  radius            legal\n";
  for (const auto& m : t.moves) {
    out << std::setw(5) << m.stage << "  " << std::left << std::setw(7) << to_string(m.player) << std::right
        << std::setw(7) << m.ball.index() << "  " << std::left << std::setw(16) << to_string(m.ball.radius)
        << std::right << "  yes\n";
  }
  if (t.termination.completed) {
    out << "completed " << t.termination.stage << " stages, " << t.moves.size() << " moves\n";
  } else {
    out << to_string(*t.termination.loser) << " loses at stage " << t.termination.stage << ": "
        << t.termination.reason << "\n";
  }
  if (!o.out_file.empty()) write_json(o.out_file, transcript_to_json(t));
  return kPass;
}

int cmd_play(const Options& o, std::ostream& out) {
  require_interval(o);
  if (o.variant == "product") return play_variant<ProductBall>(o, out);
  if (o.variant == "increasing") return play_variant<IncreasingBall>(o, out);
  throw UsageError("variant must be product or increasing");
}

// ---- transfer ----

struct GameRun {
  ComposedGame game;
  Verification verification;
};

GameRun run_composed(const Options& o, std::uint64_t offset) {
  const Direction dir = parse_direction(o.direction);
  const Fault fault = parse_fault(o.fault);
  GameRun run;
  if (dir == Direction::fig1) {
    auto p1 = make_strategy<ProductBall>(o.p1, o.seed, offset);
    auto inner = make_strategy<IncreasingBall>(o.inner, o.seed + 1, offset);
    if (o.decay) inner = decay_wrapper(std::move(inner));
    run.game = play_fig1(*p1, std::move(inner), o.rounds, fault);
  } else {
    auto p1 = make_strategy<IncreasingBall>(o.p1, o.seed, offset);
    auto inner = make_strategy<ProductBall>(o.inner, o.seed + 1, offset);
    if (o.decay) inner = decay_wrapper(std::move(inner));
    run.game = play_fig2(*p1, std::move(inner), o.rounds, fault);
  }
  run.verification = verify_composed(run.game, {o.decay, fault});
  return run;
}

void print_matrix(const GameRun& run, std::ostream& out) {
  const auto& stages = run.verification.stages;
  out << std::left << std::setw(26) << "check";
  for (const auto& s : stages) out << std::right << std::setw(3) << s.stage;
  out << "\n";
  if (!stages.empty()) {
    for (std::size_t c = 0; c < stages.front().checks.size(); ++c) {
      out << std::left << std::setw(26) << stages.front().checks[c].name;
      for (const auto& s : stages) out << std::right << std::setw(3) << (s.checks[c].pass ? "." : "X");
      out << "\n";
    }
  }
  for (const auto& g : run.verification.global) {
    out << std::left << std::setw(26) << g.name << std::right << std::setw(3) << (g.pass ? "." : "X") << "\n";
  }
  const Termination& t = run.game.termination;
  if (!t.completed && t.loser) {
    out << "game ended at stage " << t.stage << ": " << to_string(*t.loser) << " " << t.reason << "\n";
  }
}

void print_failure(const GameRun& run, std::ostream& out) {
  const auto failing = run.verification.failing_checks();
  out << "failing checks:";
  for (const auto& f : failing) out << " " << f;
  out << "\n";
  for (std::size_t i = 0; i < run.verification.stages.size(); ++i) {
    if (!run.verification.stages[i].pass()) {
      out << "failing stage record:\n"
          << to_json(run.game.records[i], run.verification.stages[i].checks).dump(2) << "\n";
      return;
    }
  }
}

int cmd_transfer(const Options& o, std::ostream& out) {
  require_interval(o);
  if (o.games == 0) throw UsageError("--games must be positive");
  if (o.jobs == 0) throw UsageError("--jobs must be positive");
  parse_direction(o.direction);
  parse_fault(o.fault);

  if (o.games == 1) {
    const GameRun run = run_composed(o, 0);
    print_matrix(run, out);
    if (!o.out_file.empty()) write_json(o.out_file, composed_to_json(run.game, run.verification));
    if (run.verification.pass()) {
      out << "transfer " << o.direction << ": pass\n";
      return kPass;
    }
    print_failure(run, out);
    return kFail;
  }

  std::vector<GameRun> runs(o.games);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t g; (g = next++) < o.games;) {
      try {
        runs[g] = run_composed(o, g);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::min<std::size_t>(o.jobs, o.games); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::size_t passed = 0;
  const GameRun* first_failure = nullptr;
  std::size_t first_index = 0;
  for (std::size_t g = 0; g < runs.size(); ++g) {
    if (runs[g].verification.pass()) {
      ++passed;
    } else if (!first_failure) {
      first_failure = &runs[g];
      first_index = g;
    }
  }
  if (!o.out_file.empty()) {
    Json all = Json::array();
    for (const auto& r : runs) all.push_back(composed_to_json(r.game, r.verification));
    write_json(o.out_file, Json{{"games", std::move(all)}});
  }
  out << "transfer " << o.direction << ": " << passed << "/" << o.games << " games pass\n";
  if (!first_failure) return kPass;
  out << "first failing game: offset " << first_index << "\n";
  print_failure(*first_failure, out);
  return kFail;
}

// ---- null-demo ----

int cmd_null_demo(const Options& o, std::ostream& out) {
  require_interval(o);
  const Scalar epsilon = parse_scalar(o.epsilon);
  if (epsilon <= 0 || epsilon > 1) throw UsageError("--epsilon must lie in (0,1]");
  auto p1 = random_player1<ProductBall>(o.seed, parse_growth(o.growth));
  NullPlayer2 p2(epsilon);
  const Transcript<ProductBall> t = play(*p1, p2, o.rounds);

  bool ok = t.termination.completed;
  Scalar total = 0;
  out << "stage  index  measure           bound\n";
  for (std::size_t i = 0; i < p2.certificates().size(); ++i) {
    const NullCertificate& c = p2.certificates()[i];
    // Recompute the certificate from the reply itself.
    const ProductBall& reply = t.moves.at(2 * i + 1).ball;
    const Scalar measure = interval_measure(union_of(reply.prefix), reply.radius);
    const bool stage_ok = measure == c.measure && c.measure <= c.bound && c.bound == epsilon * inverse_power_of_two(c.stage);
    ok = ok && stage_ok;
    total += c.measure;
    out << std::setw(5) << c.stage << std::setw(7) << reply.index() << "  " << std::left << std::setw(16)
        << to_string(c.measure) << "  " << to_string(c.bound) << std::right << (stage_ok ? "" : "  VIOLATED") << "\n";
  }
  ok = ok && total <= epsilon;
  out << "cumulative measure " << to_string(total) << (total <= epsilon ? " <= " : " > ") << to_string(epsilon) << "\n";
  if (!t.termination.completed && t.termination.loser) {
    out << to_string(*t.termination.loser) << " lost at stage " << t.termination.stage << ": " << t.termination.reason
        << "\n";
  }
  if (!o.out_file.empty()) write_json(o.out_file, transcript_to_json(t));
  out << (ok ? "null-demo: pass" : "null-demo: FAIL") << "\n";
  return ok ? kPass : kFail;
}

// ---- interactive ----

template <class Ball, class Composed>
int interactive_session(const Options& o, std::unique_ptr<Composed> composed, Direction dir, std::istream& in,
                        std::ostream& out) {
  const std::string path = o.out_file.empty() ? "interactive-transcript.json" : o.out_file;
  std::vector<Ball> history;
  Termination termination;
  auto flush = [&](bool pass_exit) {
    ComposedGame game{dir, composed->records(), termination};
    const Verification v = verify_composed(game, {o.decay, Fault::none});
    write_json(path, composed_to_json(game, v));
    out << "transcript written to " << path << "\n";
    return pass_exit ? kPass : kFail;
  };

  out << "You are Player I in the " << kVariantName<Ball> << " game. Enter a ball such as ([{0},{1/2}], 2, 1/10), "
      << "or quit.\n";
  std::size_t stage = 1;
  std::string line;
  while (stage <= o.rounds) {
    out << "stage " << stage << "> " << std::flush;
    if (!std::getline(in, line)) break;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line.compare(first, 4, "quit") == 0) break;

    Ball ball;
    try {
      const BallLiteral lit = parse_ball_literal(line);
      ball = Ball{lit.prefix, lit.radius};
    } catch (const std::invalid_argument& e) {
      out << "malformed ball: " << e.what() << "\n";
      continue;
    }
    const ValidityReport report = validate(ball);
    if (!report.empty()) {
      out << "invalid move:\n";
      for (const auto& issue : report) out << "  [" << issue.check << "] " << issue.detail << "\n";
      continue;
    }
    if (!history.empty() && !legal_nesting(ball, history.back())) {
      out << "illegal move: not nested in " << format_ball(history.back()) << "\n";
      continue;
    }
    history.push_back(ball);

    Ball reply;
    try {
      reply = composed->move(history);
    } catch (const std::exception& e) {
      termination = {false, Role::player_two, stage, std::string("strategy failure: ") + e.what()};
      out << "Player II failed: " << e.what() << "\n";
      return flush(false);
    }
    history.push_back(reply);
    out << "Player II: " << format_ball(reply) << "\n";

    ComposedGame game{dir, composed->records(), termination};
    const Verification v = verify_composed(game, {o.decay, Fault::none});
    const StageVerification& sv = v.stages.back();
    out << "  checks:";
    for (const auto& c : sv.checks) out << " " << c.name << (c.pass ? "=ok" : "=FAIL");
    out << "\n";
    ++stage;
  }
  termination.completed = stage > o.rounds;
  termination.stage = stage - 1;
  return flush(true);
}

int cmd_interactive(const Options& o, std::istream& in, std::ostream& out) {
  require_interval(o);
  const Direction dir = parse_direction(o.direction);
  if (dir == Direction::fig1) {
    auto inner = make_strategy<IncreasingBall>(o.inner, o.seed, 0);
    if (o.decay) inner = decay_wrapper(std::move(inner));
    return interactive_session<ProductBall>(o, compose_for_product_game(std::move(inner)), dir, in, out);
  }
  auto inner = make_strategy<ProductBall>(o.inner, o.seed, 0);
  if (o.decay) inner = decay_wrapper(std::move(inner));
  return interactive_session<IncreasingBall>(o, compose_for_increasing_game(std::move(inner)), dir, in, out);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Banach-Mazur games on hyperspaces of compact sets"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file whose keys mirror the long flags");
  app.require_subcommand(1);

  Options o;
  app.add_option("--space", o.space, "unit-interval (games) or grid:N")->capture_default_str();
  app.add_option("--rounds", o.rounds, "stages per game")->capture_default_str();
  app.add_option("--seed", o.seed, "base seed")->capture_default_str();
  app.add_option("--out", o.out_file, "write the transcript JSON here");
  app.add_option("--jobs", o.jobs, "worker threads for batch transfer runs")->capture_default_str();
  app.add_option("--games", o.games, "number of seeded games for transfer")->capture_default_str();
  app.add_option("--epsilon", o.epsilon, "measure budget p/q for null-demo")->capture_default_str();
  app.add_option("--variant", o.variant, "product or increasing (play)")->capture_default_str();
  app.add_option("--p1", o.p1, "Player I strategy")->capture_default_str();
  app.add_option("--p2", o.p2, "Player II strategy (play)")->capture_default_str();
  app.add_option("--inner", o.inner, "strategy driven through the transfers")->capture_default_str();
  app.add_option("--direction", o.direction, "fig1 (real game K^N) or fig2 (real game K↗^N)")->capture_default_str();
  app.add_flag("--decay", o.decay, "cap the inner strategy's radius at 2^-m");
  app.add_option("--inject-fault", o.fault,
                 "none | skip-dummy-bucket | open-parent-threshold | rtilde-equals-r | metric (oracle)")
      ->capture_default_str();
  app.add_option("--grid", o.grids, "finite-grid resolutions for the oracle")->capture_default_str();
  app.add_option("--growth", o.growth, "index growth of the random Player I: none | random | extend-by-2")
      ->capture_default_str();

  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive checks on finite grids");
  CLI::App* play_cmd = app.add_subcommand("play", "play one game between two named strategies");
  CLI::App* transfer = app.add_subcommand("transfer", "composed-strategy games with full verification");
  CLI::App* null_demo = app.add_subcommand("null-demo", "certified Player II for the null family");
  CLI::App* interactive = app.add_subcommand("interactive", "enter Player I moves by hand");
  for (CLI::App* sub : {oracle, play_cmd, transfer, null_demo, interactive}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  }

  try {
    if (o.rounds == 0) throw UsageError("--rounds must be positive");
    if (*oracle) return cmd_oracle(o, out);
    if (*play_cmd) return cmd_play(o, out);
    if (*transfer) return cmd_transfer(o, out);
    if (*null_demo) return cmd_null_demo(o, out);
    return cmd_interactive(o, in, out);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace hypergame
