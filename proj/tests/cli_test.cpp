#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace ncts {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ncts");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, SolveText) {
  const auto r = run({"solve", "--path", "flat:1..5", "--point", "3,3", "--format", "text"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_polynomial(r.out), solve(fundamental_path(1, 5), {3, 3}));
}

TEST(Cli, SolveJsonRoundTrips) {
  const auto r = run({"solve", "--path", "j0=0; heights=2,1,0,1,0,1", "--point", "2,4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["terms"], 8);
  EXPECT_EQ(j["projection"], Json::array({0, 5}));
  EXPECT_EQ(polynomial_from_json(j["polynomial"]), solve(InitialPath(0, {2, 1, 0, 1, 0, 1}), {2, 4}));
}

TEST(Cli, SolveBullet) {
  const auto r = run({"solve", "--path", "flat:1..5", "--point", "3,3", "--bullet", "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse_polynomial(r.out), involution(solve(fundamental_path(1, 5), {3, 3})));
}

TEST(Cli, PathsAndDimersAgree) {
  const auto p = run({"paths", "--path", "flat:1..5", "--point", "3,3"});
  const auto d = run({"dimers", "--path", "flat:1..5", "--point", "3,3"});
  ASSERT_EQ(p.code, 0);
  ASSERT_EQ(d.code, 0);
  const auto pj = Json::parse(p.out), dj = Json::parse(d.out);
  EXPECT_EQ(pj["count"], 5);
  EXPECT_EQ(dj["count"], 5);
  EXPECT_EQ(polynomial_from_json(pj["partition_function"]) * NCPolynomial(atom(5)),
            polynomial_from_json(dj["partition_function"]));
}

TEST(Cli, DotFilesAndRender) {
  const auto file = std::filesystem::temp_directory_path() / "ncts_cli_test.dot";
  std::filesystem::remove(file);
  ASSERT_EQ(run({"dimers", "--path", "flat:1..5", "--point", "3,3", "--dot", file.string()}).code, 0);
  std::ifstream is(file);
  std::stringstream buf;
  buf << is.rdbuf();
  EXPECT_NE(buf.str().find("graph ladder"), std::string::npos);
  std::filesystem::remove(file);

  const auto net = run({"render", "--path", "flat:1..5", "--point", "3,3"});
  EXPECT_NE(net.out.find("digraph network"), std::string::npos);
  const auto ladder = run({"render", "--path", "flat:1..5", "--point", "3,3", "--graph", "ladder"});
  EXPECT_EQ(ladder.out, to_dot(build_ladder(fundamental_path(1, 5), 1, 5)));
}

TEST(Cli, CheckPassesAndIsDeterministic) {
  const std::vector<std::string> args{"check", "--path", "flat:-8..8", "--trials", "3", "--dim", "3"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  const auto j = Json::parse(a.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["scenes"].size(), 3u);
  EXPECT_EQ(j["negative_control"]["failing_scenes"], 3);
}

TEST(Cli, CheckWithCommutingScalarsMissesNegativeControl) {
  // With 1x1 matrices transposition is trivial, so dropping the bullet is not detectable.
  const auto r = run({"check", "--path", "flat:-8..8", "--trials", "2", "--dim", "1"});
  EXPECT_EQ(r.code, 1);
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_FALSE(j["negative_control"]["ok"].get<bool>());
}

TEST(Cli, SeedFromEnvironment) {
  const std::vector<std::string> args{"check", "--path", "flat:-6..6", "--trials", "1", "--dim", "2"};
  ::setenv("NCTS_SEED", "17", 1);
  const auto env = run(args);
  ::unsetenv("NCTS_SEED");
  ASSERT_EQ(env.code, 0);
  EXPECT_EQ(Json::parse(env.out)["seed"], 17);
  auto explicit_args = args;
  explicit_args.insert(explicit_args.end(), {"--seed", "17"});
  EXPECT_EQ(run(explicit_args).out, env.out);

  ::setenv("NCTS_SEED", "abc", 1);
  EXPECT_EQ(run(args).code, 2);
  ::unsetenv("NCTS_SEED");
}

TEST(Cli, Reductions) {
  const auto q = run({"reduce", "qsystem", "--n", "8", "--trials", "2", "--dim", "3"});
  ASSERT_EQ(q.code, 0) << q.out;
  EXPECT_TRUE(Json::parse(q.out)["ok"].get<bool>());
  const auto qt = run({"reduce", "quantum", "--range", "10", "--patch", "3"});
  ASSERT_EQ(qt.code, 0);
  EXPECT_TRUE(Json::parse(qt.out)["ok"].get<bool>());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve", "--path", "flat:1..5"}).code, 2);
  EXPECT_EQ(run({"solve", "--path", "flat:1..5", "--point", "3,4"}).code, 2);  // bad parity
  EXPECT_EQ(run({"solve", "--path", "flat:1..5", "--point", "3,9"}).code, 2);  // outside the cone
  EXPECT_EQ(run({"solve", "--path", "garbage", "--point", "3,3"}).code, 2);
  EXPECT_EQ(run({"render", "--path", "flat:1..5", "--point", "3,3", "--graph", "tree"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace ncts
