#include "rpm/reproduce.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

using namespace rpm;

struct Result {
  int status;
  std::string out;
};

// Runs the rpm binary with the given arguments; stderr is discarded unless
// the arguments redirect it.
Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + RPM_BINARY + std::string(" ") + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
  }
  return "";
}

TEST(Cli, BoundsCsvReproducesReferenceRows) {
  const Result r = run("bounds --coeff 2=1 --coeff 4=1/10 --n 0 --dmax 15 --digits 40 --format csv");
  ASSERT_EQ(r.status, 0);
  std::string expected = "D,lower,upper\n";
  for (const auto& row : reference::tenth_ground_rows) {
    expected += std::to_string(row.dimension) + "," + row.lower + "," + row.upper + "\n";
  }
  EXPECT_EQ(r.out, expected);
}

TEST(Cli, HarmonicBoundsAreOne) {
  const Result r = run("bounds --coeff 2=1 --n 0 --dmax 2 --format csv");
  ASSERT_EQ(r.status, 0);
  const std::string one = "1." + std::string(39, '0');
  EXPECT_EQ(r.out, "D,lower,upper\n2," + one + "," + one + "\n");
}

TEST(Cli, QuarticTwoJson) {
  const Result r = run("bounds --coeff 2=1 --coeff 4=2 --n 0 --dmax 15 --digits 30 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_FALSE(j.empty());
  EXPECT_EQ(j.back()["D"], 15);
  EXPECT_EQ(j.back()["lower"], reference::two_lower);
  EXPECT_EQ(j.back()["upper"], reference::two_upper);
}

TEST(Cli, DminSelectsPrintedRowsOfTheSameContinuation) {
  const Result full = run("bounds --coeff 2=1 --coeff 4=2 --n 0 --dmax 15 --digits 30 --format csv");
  const Result tail = run("bounds --coeff 2=1 --coeff 4=2 --n 0 --dmin 14 --dmax 15 --digits 30 --format csv");
  ASSERT_EQ(full.status, 0);
  ASSERT_EQ(tail.status, 0);
  const auto row14 = full.out.find("\n14,");
  ASSERT_NE(row14, std::string::npos);
  EXPECT_EQ(tail.out, "D,lower,upper" + full.out.substr(row14));
  EXPECT_EQ(run("bounds --coeff 2=1 --coeff 4=1/10 --n 3 --dmin 2 --dmax 4").status, 3);
}

TEST(Cli, OutputFileMatchesStdoutAndIsDeterministic) {
  const auto path = std::filesystem::temp_directory_path() / "rpm_cli_test_table.txt";
  std::filesystem::remove(path);
  const std::string args = "bounds --coeff 2=1 --coeff 4=1/10 --n 1 --dmax 6 --digits 25";
  const Result to_file = run(args + " --out " + path.string());
  ASSERT_EQ(to_file.status, 0);
  EXPECT_TRUE(to_file.out.empty());
  std::ifstream in(path);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const Result a = run(args), b = run(args);
  EXPECT_EQ(a.out, written);
  EXPECT_EQ(a.out, b.out);
  std::filesystem::remove(path);
}

TEST(Cli, Digits) {
  const Result r = run(std::string("digits ") + reference::two_claim + " " + reference::two_lower + " " + reference::two_upper);
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(field(r.out, "agreed_digits"), "13");
  EXPECT_EQ(field(r.out, "claimed_digits"), "13");
  EXPECT_EQ(field(r.out, "inside"), "false");

  const auto& s = reference::tenth_states[2];
  const Result aim = run(std::string("digits ") + s.claim + " " + s.lower + " " + s.upper);
  ASSERT_EQ(aim.status, 0);
  EXPECT_EQ(field(aim.out, "agreed_digits"), "21");

  EXPECT_EQ(run("digits 1.2x 1 2").status, 2);
}

TEST(Cli, AimConstCheck) {
  const Result distinct = run("aim const-check --lambda0 0 --s0 1");
  ASSERT_EQ(distinct.status, 0);
  EXPECT_EQ(field(distinct.out, "equal_roots"), "false");
  EXPECT_EQ(field(distinct.out, "b_plus").substr(0, 3), "1.0");
  EXPECT_EQ(field(distinct.out, "b_minus").substr(0, 4), "-1.0");
  EXPECT_LT(std::stod(field(distinct.out, "max_residual")), 1e-30);

  const Result equal = run("aim const-check --lambda0 -2 --s0 -1");
  ASSERT_EQ(equal.status, 0);
  EXPECT_EQ(field(equal.out, "equal_roots"), "true");
  EXPECT_EQ(field(equal.out, "b_plus").substr(0, 3), "1.0");
  EXPECT_LT(std::stod(field(equal.out, "max_residual")), 1e-30);

  const Result complex = run("aim const-check --lambda0 2 --s0 -5");
  ASSERT_EQ(complex.status, 0);
  EXPECT_EQ(field(complex.out, "complex_pair"), "true");
  EXPECT_LT(std::stod(field(complex.out, "max_residual")), 1e-30);
}

TEST(Cli, AimEstimateHarmonic) {
  const Result r = run("aim estimate --harmonic --x0 0 --kmax 10 --digits 20");
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::string line, last;
  while (std::getline(in, line)) last = line;
  ASSERT_EQ(last.rfind("k=10:", 0), 0u) << last;
  for (const char* level : {" 1.0000000000000000000", " 3.0000000000000000000", " 5.0000000000000000000",
                            " 7.0000000000000000000"}) {
    EXPECT_NE(last.find(level), std::string::npos) << level << " in " << last;
  }
}

TEST(Cli, WorkingDigitsFromEnvironment) {
  // 40 output digits need 60 working digits with the default guard.
  EXPECT_EQ(run("bounds --coeff 2=1 --n 0 --dmax 2", "RPM_WORKING_DIGITS=50").status, 2);
  EXPECT_EQ(run("bounds --coeff 2=1 --n 0 --dmax 2", "RPM_WORKING_DIGITS=60").status, 0);
  EXPECT_EQ(run("bounds --coeff 2=1 --n 0 --dmax 2 --working-digits 60", "RPM_WORKING_DIGITS=50").status, 0);
  EXPECT_EQ(run("bounds --coeff 2=1 --n 0 --dmax 2", "RPM_WORKING_DIGITS=abc").status, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("bounds --coeff 3=1").status, 2);
  EXPECT_EQ(run("bounds --coeff 2=1 --digits 110").status, 2);
  EXPECT_EQ(run("bounds --coeff 2=1 --format xml").status, 2);
  EXPECT_EQ(run("reproduce table9").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST(Cli, ReproduceTableOnePasses) {
  const Result r = run("reproduce table1");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("table1: 28/28 PASS"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

}  // namespace
