#include "adopt/adopt.hpp"
#include "commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace adopt;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("adopt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name)) << content;
    return path(name);
  }

  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  // Unit star 0-{1,2,3} as a tree-induced instance with all bounds 2.
  std::string star_instance() const {
    return write("star.json",
                 R"({"n": 4, "source": "tree", "tree_edges": [[0,1],[0,2],[0,3]],
                     "tree_weights": [1, 1, 1], "bounds": [2, 2, 2, 2]})");
  }

  fs::path dir_;
};

std::string field(const std::string& report, const std::string& key) {
  std::istringstream is(report);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(key + " ", 0) == 0) {
      auto pos = line.find_first_not_of(' ', key.size());
      auto end = line.find(' ', pos);
      return line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    }
  }
  return "";
}

}  // namespace

TEST_F(Cli, GenKaryEchoesLowerBound) {
  auto r = run({"gen", "kary", "--D", "4", "--depth", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("lower_bound 5/4"), std::string::npos) << r.err;
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["n"], 13);
  EXPECT_EQ(doc["source"], "tree");
}

TEST_F(Cli, GenT2PointCount) {
  auto r = run({"gen", "t2", "--n", "3", "--k", "2", "--out", path("t2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("points=24"), std::string::npos) << r.out;
  auto file = read_instance(path("t2.json"));
  EXPECT_EQ(file.size(), 24u);
  EXPECT_TRUE(file.initial_tree);
}

TEST_F(Cli, GenRandomIsDeterministic) {
  auto a = run({"gen", "random", "--n", "50", "--norm", "l1", "--seed", "7"});
  auto b = run({"gen", "random", "--n", "50", "--norm", "l1", "--seed", "7"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"gen", "random", "--n", "50", "--norm", "l1", "--seed", "8"}).out);
}

TEST_F(Cli, RoundTripEveryFamily) {
  struct Case {
    std::vector<std::string> gen;
    std::vector<std::string> algorithms;
  };
  std::vector<Case> cases{
      {{"gen", "kary"}, {"flow", "greedy", "treedp"}},
      {{"gen", "path"}, {"flow"}},
      {{"gen", "t2"}, {"flow", "greedy", "treedp"}},
      {{"gen", "random"}, {"flow", "greedy", "treedp"}},
  };
  for (auto& c : cases) {
    auto gen = c.gen;
    gen.insert(gen.end(), {"--out", path("inst.json")});
    ASSERT_EQ(run(gen).code, 0) << gen[1];
    for (const auto& alg : c.algorithms) {
      auto s = run({"solve", path("inst.json"), "--algorithm", alg, "--out", path("tree.json")});
      ASSERT_EQ(s.code, 0) << gen[1] << " " << alg << ": " << s.err;
      EXPECT_EQ(field(s.out, "meets_bounds"), "true");
      auto v = run({"verify", path("inst.json"), path("tree.json")});
      EXPECT_EQ(v.code, 0) << gen[1] << " " << alg << ": " << v.out;
    }
  }
}

TEST_F(Cli, SolveUnitStar) {
  auto inst = star_instance();
  auto r = run({"solve", inst, "--algorithm", "flow", "--trace", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(field(r.out, "ratio"), "4/3");
  EXPECT_EQ(field(r.out, "bound"), "2");
  EXPECT_EQ(field(r.out, "w(T')"), "4");
  EXPECT_NE(r.out.find("ADOPT 1 0 2 1"), std::string::npos);

  auto j = run({"solve", inst, "--format", "json", "--algorithm", "treedp"});
  auto doc = Json::parse(j.out);
  EXPECT_EQ(doc["ratio"], "4/3");
  EXPECT_EQ(doc["meets_bounds"], true);

  auto csv = run({"solve", inst, "--format", "csv", "--algorithm", "greedy"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')),
            "algorithm,w_T,w_T_prime,flow_cost,realized_delta,c,bound,ratio,meets_bounds");
}

TEST_F(Cli, SolveBoundSatisfyingInstanceIsIdentity) {
  auto inst = write("path.json", R"({"n": 3, "source": "matrix", "matrix": [1, 2, 1], "bounds": [2, 2, 2]})");
  auto r = run({"solve", inst, "--trace", path("trace.txt"), "--flow-out", path("flow.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(field(r.out, "ratio"), "1");
  EXPECT_EQ(read(path("trace.txt")), "");
  EXPECT_EQ(read(path("flow.txt")), "");
}

TEST_F(Cli, SolveKaryWithinGuarantee) {
  ASSERT_EQ(run({"gen", "kary", "--D", "4", "--depth", "3", "--d", "3", "--out", path("k.json")}).code, 0);
  for (std::string alg : {"flow", "greedy", "treedp"}) {
    auto r = run({"solve", path("k.json"), "--algorithm", alg, "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ratio = parse_rational(Json::parse(r.out)["ratio"].get<std::string>());
    EXPECT_LE(ratio, Rational(3, 2)) << alg;
  }
}

TEST_F(Cli, VerifyReportsFailures) {
  auto inst = star_instance();
  auto cyc = write("cyc.json", R"({"n": 4, "edges": [[0,1],[1,2],[2,0]]})");
  auto r = run({"verify", inst, cyc});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("cycle"), std::string::npos) << r.out;

  auto star = write("star_tree.json", R"({"n": 4, "edges": [[0,1],[0,2],[0,3]]})");
  auto b = run({"verify", inst, star});
  EXPECT_EQ(b.code, 1);
  EXPECT_NE(b.out.find("vertex 0 has degree 3"), std::string::npos) << b.out;

  auto good = write("good.json", R"({"n": 4, "edges": [[0,1],[1,2],[0,3]]})");
  auto g = run({"verify", inst, good});
  EXPECT_EQ(g.code, 0) << g.out;
  EXPECT_NE(g.out.find("ratio 4/3"), std::string::npos);
}

TEST_F(Cli, RatioTables) {
  auto k = run({"ratio-table", "--family", "kary", "--k-min", "1", "--k-max", "4", "--format", "csv",
                "--algorithms", "flow"});
  ASSERT_EQ(k.code, 0) << k.err;
  std::istringstream is(k.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "D,d,k,n,lower,flow,upper");
  double prev = 0;
  int rows = 0;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    double lower = std::stod(cells[4]), ratio = std::stod(cells[5]), upper = std::stod(cells[6]);
    EXPECT_GE(ratio, prev);
    EXPECT_LE(lower, ratio + 1e-12);
    EXPECT_LE(ratio, upper);
    prev = ratio;
    ++rows;
  }
  EXPECT_EQ(rows, 4);

  auto t = run({"ratio-table", "--family", "t2", "--k-min", "3", "--k-max", "4", "--format", "csv"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("6,3,"), std::string::npos);
  EXPECT_NE(t.out.find(",0.333333,"), std::string::npos);  // 2(3-2)/(3+3)
  EXPECT_NE(t.out.find(",0.571429,"), std::string::npos);  // 4/7

  auto empty = run({"ratio-table", "--k-min", "3", "--k-max", "2", "--format", "csv"});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(std::count(empty.out.begin(), empty.out.end(), '\n'), 1);
}

TEST_F(Cli, Oracle) {
  auto inst = star_instance();
  auto d = run({"oracle", "dbst", inst});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.out.substr(0, d.out.find('\n')), "weight 4");
  auto h = run({"oracle", "hamilton", inst});
  EXPECT_EQ(h.out.substr(0, h.out.find('\n')), "weight 4");
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"solve", path("missing.json")}).code, 3);
  EXPECT_EQ(run({"bogus"}).code, 3);
  EXPECT_EQ(run({"--help"}).code, 0);
  auto infeasible = write("inf.json", R"({"n": 4, "source": "tree", "tree_edges": [[0,1],[0,2],[0,3]],
                                         "tree_weights": [1, 1, 1], "bounds": [1, 1, 1, 1]})");
  auto r = run({"solve", infeasible});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("infeasible"), std::string::npos);
  ASSERT_EQ(run({"gen", "path", "--out", path("p.json")}).code, 0);
  EXPECT_EQ(run({"solve", path("p.json"), "--algorithm", "greedy"}).code, 3);
  auto nobounds = write("nb.json", R"({"n": 2, "source": "matrix", "matrix": [1]})");
  EXPECT_EQ(run({"solve", nobounds}).code, 3);
  auto badweight = write("bw.json", R"({"n": 2, "source": "matrix", "matrix": ["x"], "bounds": [1, 1]})");
  EXPECT_EQ(run({"solve", badweight}).code, 3);
}
