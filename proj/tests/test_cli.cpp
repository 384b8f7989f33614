#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cheb/cli.hpp"

namespace fs = std::filesystem;
using cheb::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string strip_runtime(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"runtime\"") != std::string::npos || line.rfind("# runtime", 0) == 0) continue;
    out += line + "\n";
  }
  return out;
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / ("cheb_cli_test_" + name); }

}  // namespace

TEST(Cli, HsCsv) {
  auto r = invoke({"hs", "--max-s", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\n4,105,60,"), std::string::npos);
  EXPECT_NE(r.out.find("s,mu2s,Hs,ratio\n"), std::string::npos);
  EXPECT_EQ(r.out.rfind("# manifest", 0), 0u);
}

TEST(Cli, HsJson) {
  auto r = invoke({"hs", "--max-s", "4", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"][4]["Hs"], "60");
}

TEST(Cli, GroupJson) {
  auto r = invoke({"group", "--p", "5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  std::vector<int> deg;
  for (const auto& chi : j["group"]["characters"]) deg.push_back(chi["degree"]);
  EXPECT_EQ(deg, (std::vector<int>{1, 1, 1, 1, 4}));
}

TEST(Cli, Conductor) {
  auto r = invoke({"conductor", "--a", "2", "--p", "3"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["A_theta"], "108");
  EXPECT_EQ(j["d_L"], "34992");
  EXPECT_TRUE(j["lemma21_bracket"].is_null());
  EXPECT_TRUE(j["lemma37_ok"].get<bool>());
}

TEST(Cli, VerifyQuick) {
  auto r = invoke({"verify", "--quick"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, BadFlags) {
  EXPECT_EQ(invoke({"hs", "--max-s", "abc"}).code, cheb::cli::kExitBadFlags);
  EXPECT_EQ(invoke({"group"}).code, cheb::cli::kExitBadFlags);
  EXPECT_EQ(invoke({"frobnicate"}).code, cheb::cli::kExitBadFlags);
  EXPECT_EQ(invoke({"group", "--p", "9"}).code, cheb::cli::kExitBadFlags);
  EXPECT_EQ(invoke({"sieve", "--a", "4", "--p", "3", "--xmax", "1000", "--out", tmp("x").string()}).code,
            cheb::cli::kExitBadFlags);
}

TEST(Cli, IoErrors) {
  EXPECT_EQ(invoke({"moments", "--dataset", "/nonexistent/file"}).code, cheb::cli::kExitIo);
  auto bad = tmp("garbage.txt");
  std::ofstream(bad) << "not a dataset\n";
  EXPECT_EQ(invoke({"moments", "--dataset", bad.string()}).code, cheb::cli::kExitIo);
  fs::remove(bad);
}

TEST(Cli, CheckFile) {
  auto ds = tmp("ds.txt");
  ASSERT_EQ(invoke({"sieve", "--a", "2", "--p", "3", "--xmax", "10000", "--out", ds.string()}).code, 0);
  EXPECT_EQ(invoke({"--check", ds.string()}).code, 0);

  auto report = tmp("hs.csv");
  ASSERT_EQ(invoke({"hs", "--out", report.string()}).code, 0);
  EXPECT_EQ(invoke({"--check", report.string()}).code, 0);

  auto text = slurp(ds);
  text[text.size() / 2] = text[text.size() / 2] == '1' ? '2' : '1';
  std::ofstream(ds, std::ios::binary) << text;
  EXPECT_EQ(invoke({"--check", ds.string()}).code, cheb::cli::kExitVerifyFailed);
  fs::remove(ds);
  fs::remove(report);
}

TEST(Cli, OutputsIndependentOfWorkers) {
  auto d1 = tmp("w1.txt"), d4 = tmp("w4.txt");
  ASSERT_EQ(invoke({"--workers", "1", "sieve", "--a", "2", "--p", "7", "--xmax", "300000", "--segment", "4096",
                    "--out", d1.string()})
                .code,
            0);
  ASSERT_EQ(invoke({"--workers", "4", "sieve", "--a", "2", "--p", "7", "--xmax", "300000", "--out", d4.string()})
                .code,
            0);
  EXPECT_EQ(slurp(d1), slurp(d4));

  auto m1 = invoke({"--workers", "1", "moments", "--dataset", d1.string(), "--U", "5", "--step", "0.1"});
  auto m4 = invoke({"--workers", "4", "moments", "--dataset", d1.string(), "--U", "5", "--step", "0.1"});
  ASSERT_EQ(m1.code, 0) << m1.err;
  ASSERT_EQ(m4.code, 0);
  EXPECT_EQ(strip_runtime(m1.out), strip_runtime(m4.out));
  auto j = nlohmann::json::parse(m1.out);
  EXPECT_TRUE(j["flags"]["averaging_clamped_by_sieve_depth"].get<bool>());

  auto l1 = invoke({"--workers", "1", "limit-mc", "--samples", "200000"});
  auto l4 = invoke({"--workers", "4", "limit-mc", "--samples", "200000"});
  EXPECT_EQ(strip_runtime(l1.out), strip_runtime(l4.out));
  fs::remove(d1);
  fs::remove(d4);
}
