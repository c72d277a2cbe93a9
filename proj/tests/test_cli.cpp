#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypergame/cli.hpp"
#include "hypergame/serialize.hpp"
#include "support.hpp"

using namespace testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "hypergame");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = hypergame::run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "hypergame-cli-tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

const std::string kData = HYPERGAME_TEST_DATA;

}  // namespace

TEST_CASE("cli oracle") {
  CHECK(cli({"oracle", "--grid", "5"}).code == 0);
  const Run big = cli({"oracle", "--grid", "20"});
  CHECK(big.code == 2);
  const Run broken = cli({"oracle", "--grid", "5", "--inject-fault", "metric"});
  CHECK(broken.code == 1);
  CHECK(broken.out.find("FAIL") != std::string::npos);
}

TEST_CASE("cli play") {
  const std::string a = scratch("play-a.json");
  const std::string b = scratch("play-b.json");
  const std::vector<std::string> args{"play", "--variant", "product", "--p1", "random:seed=7", "--p2", "shrink",
                                      "--rounds", "8"};
  auto with_out = [&](const std::string& path) {
    auto v = args;
    v.insert(v.end(), {"--out", path});
    return cli(v);
  };
  REQUIRE(with_out(a).code == 0);
  REQUIRE(with_out(b).code == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));

  const Json j = Json::parse(text);
  REQUIRE(j["stages"].size() == 8);
  std::size_t moves = 0;
  for (const auto& s : j["stages"]) moves += s.contains("player1") + s.contains("player2");
  CHECK(moves == 16);
  CHECK(j["checks"]["radii_strictly_decreasing"] == true);

  CHECK(cli({"play", "--rounds", "0"}).code == 2);
  CHECK(cli({"play", "--variant", "mixed"}).code == 2);
  CHECK(cli({"play", "--space", "grid:4"}).code == 2);
}

TEST_CASE("cli play records a loss with exit 0") {
  const Run r = cli({"play", "--p1", "shrink"});
  CHECK(r.code == 0);
  CHECK(r.out.find("player1") != std::string::npos);
}

TEST_CASE("cli transfer") {
  CHECK(cli({"transfer", "--direction", "fig1", "--inner", "shrink", "--p1", "random:seed=3", "--rounds", "12"}).code ==
        0);
  CHECK(cli({"transfer", "--direction", "fig2", "--inner", "shrink", "--p1", "random:seed=3", "--rounds", "12"}).code ==
        0);
  CHECK(cli({"transfer", "--games", "4", "--jobs", "2", "--inner", "random", "--rounds", "6"}).code == 0);
}

TEST_CASE("cli transfer reproduces the worked chain") {
  const std::string path = scratch("worked.json");
  const Run r = cli({"transfer", "--p1", "script:" + kData + "/worked_player1.json", "--inner",
                     "script:" + kData + "/worked_inner.json", "--rounds", "2", "--out", path});
  CHECK(r.code == 0);
  CHECK(slurp(path) == slurp(kData + "/worked_chain.json"));
}

TEST_CASE("cli transfer with a skipped dummy bucket fails") {
  const Run r = cli({"transfer", "--p1", "script:" + kData + "/worked_player1.json", "--inner",
                     "script:" + kData + "/worked_inner.json", "--rounds", "2", "--inject-fault", "skip-dummy-bucket"});
  CHECK(r.code == 1);
  CHECK(r.out.find("bucket_partition") != std::string::npos);
  CHECK(r.out.find("\"stage\": 1") != std::string::npos);
  CHECK(cli({"transfer", "--inject-fault", "metric"}).code == 2);
}

TEST_CASE("cli null-demo") {
  const Run r = cli({"null-demo", "--epsilon", "1/100", "--rounds", "10", "--seed", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("<= 1/100") != std::string::npos);
  CHECK(cli({"null-demo", "--epsilon", "1", "--rounds", "4"}).code == 0);
  CHECK(cli({"null-demo", "--epsilon", "1/100", "--rounds", "10", "--growth", "extend-by-2"}).code == 0);
  CHECK(cli({"null-demo", "--epsilon", "0"}).code == 2);
}

TEST_CASE("cli interactive") {
  const std::string path = scratch("interactive.json");
  std::remove(path.c_str());
  const Run r = cli({"interactive", "--inner", "script:" + kData + "/worked_inner.json", "--out", path},
                    "([{0},{1/2}], 5, 1/10)\n([{0},{1/2}], 2, 1/5)\n([{0},{1/2}], 2, 1/10)\nquit\n");
  CHECK(r.code == 0);
  CHECK(r.out.find("column") != std::string::npos);
  CHECK(r.out.find("[separation] points 0/1 and 1/2") != std::string::npos);
  CHECK(r.out.find("Player II: ([{0},{1/2},{1/30}], 3, 1/400)") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const Json j = Json::parse(slurp(path));
  CHECK(j["stages"].size() == 1);
}

TEST_CASE("cli config files and usage errors") {
  const std::string config = scratch("config.json");
  {
    std::ofstream f(config);
    f << R"({"rounds": 3, "p1": "random:seed=5", "p2": "shrink"})";
  }
  const std::string out = scratch("config-play.json");
  REQUIRE(cli({"play", "--config", config, "--out", out}).code == 0);
  CHECK(Json::parse(slurp(out))["stages"].size() == 3);

  const std::string bad = scratch("bad-config.json");
  {
    std::ofstream f(bad);
    f << "[1, 2";
  }
  CHECK(cli({"play", "--config", bad}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"referee"}).code == 2);
  CHECK(cli({"play", "--p1", "random:seed=x"}).code == 2);
}
