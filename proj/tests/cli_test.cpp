#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tilt/cli.hpp"

namespace {

using nlohmann::json;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tiltwb");
  std::ostringstream out, err;
  int code = tilt::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, Classify) {
  auto r = run({"classify", "(2,3,6)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "tubular, g=1, rank G0 = 10\n");
  auto j = run({"classify", "(2,3,7)", "--format", "json"});
  EXPECT_EQ(json::parse(j.out).at("kind"), "wild");
}

TEST(Cli, HomAndExt) {
  EXPECT_EQ(run({"ext", "O(0)", "O(0)", "--weights", "(1,1)"}).out, "0\n");
  EXPECT_EQ(run({"hom", "O(0)", "O(2c)", "--weights", "(1,1)"}).out, "3\n");
  EXPECT_EQ(run({"ext", "O(2c)", "O(0)", "--weights", "(1,1)"}).out, "1\n");
  EXPECT_EQ(run({"ext", "P1[1]", "M(1,1)", "--quiver", "A2"}).out, "1\n");
  EXPECT_EQ(run({"hom", "P1[1]", "M(1,1)", "--quiver", "A2"}).code, 2);
}

TEST(Cli, TiltCheckExitCodes) {
  EXPECT_EQ(run({"tilt-check", "O(0) | O(c)", "--weights", "(1,1)"}).code, 0);
  auto bad = run({"tilt-check", "O(0) | O(2c)", "--weights", "(1,1)"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("not rigid"), std::string::npos);
  EXPECT_EQ(run({"tilt-check", "P1[1]", "--quiver", "A2"}).code, 1);
}

TEST(Cli, MutateByIndexAndLiteral) {
  auto a = run({"mutate", "P1[1] | P2[1]", "--quiver", "A2", "--index", "1", "--format", "json"});
  auto b = run({"mutate", "P1[1] | P2[1]", "--quiver", "A2", "--at", "P1[1]", "--format", "json"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out).at("key"), "P2[1] | M(1,0)");
  EXPECT_EQ(run({"mutate", "P1[1] | P2[1]", "--quiver", "A2", "--index", "3"}).code, 2);
  EXPECT_EQ(run({"mutate", "P1[1] | P2[1]", "--quiver", "A2"}).code, 2);
  auto w = run({"mutate", "O(0) | O(c)", "--weights", "(1,1)", "--index", "1", "--window", "0,1", "--format", "json"});
  EXPECT_EQ(w.code, 1);
  EXPECT_EQ(json::parse(w.out).at("kind"), "complement-not-in-window:window");
}

TEST(Cli, ExploreIsDeterministicJson) {
  auto a = run({"explore", "--quiver", "D4", "--format", "json"});
  auto b = run({"explore", "--quiver", "D4", "--format", "json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out).at("nodes").size(), 50u);
  auto c = run({"explore", "--weights", "(2,3)", "--budget", "20", "--format", "json"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(json::parse(c.out).at("nodes").size(), 20u);
  auto dot = run({"explore", "--quiver", "A2", "--format", "dot"});
  EXPECT_EQ(dot.out.rfind("graph", 0), 0u);
}

TEST(Cli, ExportToFile) {
  auto path = (std::filesystem::temp_directory_path() / "tiltwb_export_test.dot").string();
  auto r = run({"explore", "--quiver", "A3", "--format", "dot", "-o", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "wrote " + path + "\n");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(content, run({"explore", "--quiver", "A3", "--format", "dot"}).out);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"explore", "--quiver", "A2", "-o", "/nonexistent/dir/x.dot"}).code, 2);
}

TEST(Cli, PathRestrictReach) {
  auto p = run({"path", "--quiver", "A3", "--to", "M(1,0,0) | M(1,1,0) | M(1,1,1)", "--format", "json"});
  ASSERT_EQ(p.code, 0) << p.out << p.err;
  EXPECT_TRUE(json::parse(p.out).at("replay_ok").get<bool>());
  EXPECT_GT(json::parse(p.out).at("steps").size(), 0u);

  auto r = run({"restrict", "--quiver", "A3", "--pin", "P1[1]", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("nodes").size(), 5u);

  auto c = run({"reach", "O(x1)", "T(1; 0; 1)", "--weights", "(2,3)", "--format", "json"});
  ASSERT_EQ(c.code, 0) << c.out;
  EXPECT_TRUE(json::parse(c.out).at("verified").get<bool>());
}

TEST(Cli, Seeds) {
  auto r = run({"seeds", "--quiver", "A3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("seeds"), 14);
  EXPECT_EQ(j.at("variables").size(), 9u);
  auto k = run({"seeds", "--matrix", "0,2;-2,0", "--budget", "12", "--format", "json"});
  EXPECT_EQ(json::parse(k.out).at("seeds"), 12);
  EXPECT_GT(json::parse(k.out).at("frontier"), 0);
  EXPECT_EQ(run({"seeds", "--matrix", "0,1;1,0"}).code, 2);
  EXPECT_EQ(run({"seeds", "--matrix", "0,a;1,0"}).code, 2);
}

TEST(Cli, VerifySuite) {
  auto r = run({"verify", "--suite", "dynkin-counts"});
  EXPECT_EQ(r.code, 0);
  for (const char* s : {"A2:5", "A3:14", "D4:50"}) EXPECT_NE(r.out.find(s), std::string::npos) << s;
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
}

TEST(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"ext", "O(0)", "O(0)"}).code, 2);
  EXPECT_EQ(run({"ext", "O(0)", "O(0)", "--weights", "(2,3)", "--quiver", "A2"}).code, 2);
  EXPECT_EQ(run({"explore", "--quiver", "A2", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"explore", "--weights", "(2,3)", "--window", "3,1"}).code, 2);
  auto j = run({"ext", "O(q)", "O(0)", "--weights", "(2,3)", "--format", "json"});
  EXPECT_EQ(j.code, 2);
  auto e = json::parse(j.out);
  EXPECT_EQ(e.at("kind"), "parse");
  EXPECT_TRUE(j.err.empty());
}

}  // namespace
