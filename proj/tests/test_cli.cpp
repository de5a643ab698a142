#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "flagcollapse/io.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("flagcollapse_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::string read(const std::string& name) const {
    std::ifstream f(path(name));
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }

  // Runs the binary with stderr captured to "stderr.txt"; returns the exit code.
  int run(const std::string& args) const {
    std::string cmd = std::string(FLAGCOLLAPSE_CLI) + " " + args + " 2> " + path("stderr.txt");
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string stat(const std::string& key) const {
    std::istringstream in(read("stderr.txt"));
    std::string line;
    while (std::getline(in, line))
      if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
    return {};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, CompleteGraphFixpointReachesATree) {
  ASSERT_EQ(run("sample --kind complete_graph -n 700 -o " + path("k700.txt")), 0);
  ASSERT_EQ(run("collapse --algorithm backward --fixpoint --stats -i " + path("k700.txt") + " -o " +
                path("out.txt")),
            0);
  EXPECT_EQ(stat("edges_before"), "244650");
  EXPECT_EQ(stat("edges_after"), "699");
  EXPECT_EQ(flagcollapse::io::read_graph_file(path("out.txt")).edge_count(), 699u);
}

TEST_F(Cli, OneRoundOnFourCycle) {
  write("c4.txt", "0 1 1\n0 3 1\n1 2 1\n2 3 1\n");
  ASSERT_EQ(run("collapse --rounds 1 --stats -i " + path("c4.txt") + " -o " + path("out.txt")), 0);
  EXPECT_EQ(stat("edges_before"), "4");
  EXPECT_EQ(stat("edges_after"), "4");
  EXPECT_EQ(read("out.txt"), read("c4.txt"));
}

TEST_F(Cli, PersistenceOfHollowSquare) {
  write("c4.txt", "0 1 1\n1 2 1\n2 3 1\n0 3 1\n");
  ASSERT_EQ(run("persistence --max-dim 1 -i " + path("c4.txt") + " -o " + path("d.txt")), 0);
  EXPECT_EQ(read("d.txt"), "0 1 inf\n1 1 inf\n");
}

TEST_F(Cli, ConflictingFlagsAreUsageErrors) {
  write("g.txt", "0 1 1\n1 2 1\n0 2 1\n");
  const std::string in = " -i " + path("g.txt") + " -o " + path("o.txt");
  EXPECT_EQ(run("collapse --epsilon 0.1 --threads 2" + in), 2);
  EXPECT_EQ(run("collapse --epsilon 0.1 --alpha 2" + in), 2);
  EXPECT_EQ(run("collapse --fixpoint --rounds 3" + in), 2);
  EXPECT_EQ(run("collapse --algorithm forward --threads 4" + in), 2);
  EXPECT_EQ(run("collapse --epsilon 0.1 --fixpoint" + in), 2);
  EXPECT_NE(run("collapse --dense --sparse" + in), 0);
  EXPECT_NE(run("collapse --algorithm sideways" + in), 0);
  EXPECT_NE(run("frobnicate"), 0);
  EXPECT_NE(run("collapse --epsilon -1" + in), 0);
}

TEST_F(Cli, MalformedInputReportsLine) {
  write("bad.txt", "0 1 1\n0 1\n");
  EXPECT_EQ(run("collapse -i " + path("bad.txt") + " -o " + path("o.txt")), 1);
  EXPECT_NE(read("stderr.txt").find("line 2"), std::string::npos);
}

TEST_F(Cli, ThreadsGiveIdenticalOutput) {
  ASSERT_EQ(run("sample --kind uniform_square -n 120 --seed 3 -o " + path("p.txt")), 0);
  ASSERT_EQ(run("rips -i " + path("p.txt") + " -o " + path("g.txt")), 0);
  ASSERT_EQ(run("collapse -i " + path("g.txt") + " -o " + path("one.txt")), 0);
  ASSERT_EQ(run("collapse --threads 4 --stats -i " + path("g.txt") + " -o " + path("four.txt")), 0);
  EXPECT_EQ(read("one.txt"), read("four.txt"));
  ASSERT_EQ(run("collapse --fixpoint -i " + path("g.txt") + " -o " + path("one.txt")), 0);
  ASSERT_EQ(run("collapse --fixpoint --threads 3 -i " + path("g.txt") + " -o " + path("four.txt")), 0);
  EXPECT_EQ(read("one.txt"), read("four.txt"));
}

TEST_F(Cli, PipelineIsByteDeterministic) {
  std::string first;
  for (int k = 0; k < 2; ++k) {
    ASSERT_EQ(run("sample --kind circle -n 40 --seed 11 -o " + path("p.txt")), 0);
    ASSERT_EQ(run("rips --threshold 0.8 -i " + path("p.txt") + " -o " + path("g.txt")), 0);
    ASSERT_EQ(run("collapse --fixpoint -i " + path("g.txt") + " -o " + path("c.txt")), 0);
    ASSERT_EQ(run("persistence --max-dim 1 -i " + path("c.txt") + " -o " + path("d.txt")), 0);
    std::string all = read("p.txt") + read("g.txt") + read("c.txt") + read("d.txt");
    if (k == 0)
      first = all;
    else
      EXPECT_EQ(all, first);
  }
  ASSERT_EQ(run("persistence --max-dim 1 -i " + path("g.txt") + " -o " + path("full.txt")), 0);
  EXPECT_EQ(read("full.txt"), read("d.txt"));
}

TEST_F(Cli, ApproxAndBottleneck) {
  ASSERT_EQ(run("sample --kind uniform_square -n 25 --seed 5 -o " + path("p.txt")), 0);
  ASSERT_EQ(run("rips -i " + path("p.txt") + " -o " + path("g.txt")), 0);
  ASSERT_EQ(run("collapse --epsilon 0.05 -i " + path("g.txt") + " -o " + path("a.txt")), 0);
  ASSERT_EQ(run("persistence --max-dim 1 -i " + path("g.txt") + " -o " + path("d1.txt")), 0);
  ASSERT_EQ(run("persistence --max-dim 1 -i " + path("a.txt") + " -o " + path("d2.txt")), 0);
  ASSERT_EQ(run("bottleneck " + path("d1.txt") + " " + path("d2.txt") + " > " + path("b.txt")), 0);
  std::istringstream in(read("b.txt"));
  int dim;
  double d;
  int lines = 0;
  while (in >> dim >> d) {
    EXPECT_LE(d, 0.05);
    ++lines;
  }
  EXPECT_EQ(lines, 2);
}

TEST_F(Cli, ZigzagCollapseKeepsBlockedSwapDiagram) {
  write("z.txt", "0 1 1 +\n1 2 1 +\n2 3 1 +\n0 3 1 +\n4 1 2 +\n0 4 3 +\n0 1 3 -\n5 5 4\n2 5 5 +\n");
  ASSERT_EQ(run("zigzag-collapse --stats -i " + path("z.txt") + " -o " + path("r.txt")), 0);
  EXPECT_NE(stat("refused_swaps"), "0");
  ASSERT_EQ(run("zigzag-persistence --max-dim 1 -i " + path("z.txt") + " -o " + path("d.txt")), 0);
  EXPECT_NE(read("d.txt").find("1 1 5\n"), std::string::npos);
}
