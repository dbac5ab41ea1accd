#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// Drives the installed binary end to end; CONCATSEQ_CLI_PATH comes from the
// build system.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CONCATSEQ_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("eval prints exact terms") {
  CHECK(run_cli("eval --kind right --u0 1 --d 1 --n 9").out == "12345678910\n");
  CHECK(run_cli("eval --kind right --u0 1 --d 1 --n 0").out == "1\n");
  CHECK(run_cli("eval --kind left --u0 1 --d 1 --n 9").out == "10987654321\n");
  CHECK(run_cli("eval --kind palindromic --u0 1 --d 1 --n 3").out == "1234321\n");
  CHECK(run_cli("eval --kind right --u0 1 --d 2 --n 2").out == "135\n");
  CHECK(run_cli("eval --kind right --u0 1 --d 1 --n 9").exit_code == 0);
}

TEST_CASE("eval with --mod prints the residue") {
  CHECK(run_cli("eval --kind right --u0 1 --d 1 --n 9 --mod 7").out == "5\n");
  const RunResult big = run_cli("eval --kind right --u0 1 --d 1 --n 1000000000 --mod 1000000007");
  CHECK(big.exit_code == 0);
  CHECK_FALSE(big.out.empty());
}

TEST_CASE("eval writes to --out") {
  const auto path = temp_file("concatseq_eval_out.txt");
  std::filesystem::remove(path);
  const RunResult r = run_cli("eval --kind right --u0 1 --d 1 --n 9 --out " + path.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string content;
  std::getline(in, content);
  CHECK(content == "12345678910");
  std::filesystem::remove(path);
}

TEST_CASE("oversized stdout output is refused") {
  // ~1.5e8 digits at this index; the guard fires before any work happens
  const RunResult r = run_cli("eval --kind right --u0 1 --d 1 --n 20000000");
  CHECK(r.exit_code == 2);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("eval --kind sideways --u0 1 --d 1 --n 1").exit_code == 2);
  CHECK(run_cli("eval --kind right --d 1 --n 1").exit_code == 2);
  CHECK(run_cli("eval --kind right --u0 0 --d 1 --n 1").exit_code == 2);
  CHECK(run_cli("eval --kind right --u0 1 --d 1 --n 1 --mod 1").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("coeffs --kind right --u0 5 --d 3 --l 1").exit_code == 2);   // block too small
  CHECK(run_cli("coeffs --kind right --u0 5 --d 100 --l 2").exit_code == 2); // block empty
}

TEST_CASE("coeffs prints the labeled scaled set") {
  const RunResult right = run_cli("coeffs --kind right --u0 1 --d 1 --l 1");
  CHECK(right.exit_code == 0);
  CHECK(right.out == "l=1\nt=0\nD=81\nA=-19\nM=-9\nT=100\n");

  const RunResult right2 = run_cli("coeffs --kind right --u0 1 --d 1 --l 2");
  CHECK(right2.out.find("T=120999998998000\n") != std::string::npos);
  CHECK(right2.out.find("A=-1090\n") != std::string::npos);

  const RunResult left = run_cli("coeffs --kind left --u0 1 --d 1 --l 1");
  CHECK(left.out == "l=1\nt=0\np=1\nD=81\nA=1\nM=80\nT=90\n");
}

TEST_CASE("verify reports agreement with the oracle") {
  const RunResult r = run_cli("verify --kind right --u0 1 --d 1 --max 200");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "OK 201 terms\n");
  const RunResult pal = run_cli("verify --kind palindromic --u0 1 --d 2 --max 100");
  CHECK(pal.exit_code == 0);
  CHECK(pal.out == "OK 101 terms\n");
  const RunResult trivial = run_cli("verify --kind right --u0 5 --d 3 --max 0");
  CHECK(trivial.exit_code == 0);
  CHECK(trivial.out == "OK 1 terms\n");
}

TEST_CASE("digits prints block-sum digit counts") {
  CHECK(run_cli("digits --kind left --u0 1 --d 1 --n 9").out == "11\n");
  CHECK(run_cli("digits --kind right --u0 1 --d 1 --n 0").out == "1\n");
  // 9*1 + 90*2 + 900*3 + 9000*4 + 90000*5 + 900000*6 + 7
  CHECK(run_cli("digits --kind right --u0 1 --d 1 --n 999999").out == "5888896\n");
  CHECK(run_cli("digits --kind palindromic --u0 1 --d 1 --n 3").out == "7\n");
}

TEST_CASE("fit reads a term file and prints monic coefficients") {
  const auto path = temp_file("concatseq_fit_terms.txt");
  {
    std::ofstream out(path);
    out << "1 12 123 1234 12345 123456 1234567 12345678\n";
  }
  const RunResult r = run_cli("fit " + path.string() + " --order 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1 -12 21 -10\n");

  {
    std::ofstream out(path);
    // crosses the 1-digit / 2-digit boundary
    out << "1 12 123 1234 12345 123456 1234567 12345678 123456789 12345678910 "
           "1234567891011 123456789101112\n";
  }
  const RunResult none = run_cli("fit " + path.string() + " --order 3");
  CHECK(none.exit_code == 0);
  CHECK(none.out == "no recurrence of order 3\n");

  {
    std::ofstream out(path);
    out << "1 12 twelve 1234 12345 123456 1234567 12345678\n";
  }
  CHECK(run_cli("fit " + path.string() + " --order 3").exit_code == 2);
  CHECK(run_cli("fit /nonexistent/terms.txt --order 3").exit_code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("bench verifies outputs and prints a timing table") {
  const RunResult r = run_cli("bench --kind right --u0 1 --d 1 --exp 1,2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("speedup") != std::string::npos);
  CHECK(r.out.find("\n  1 ") != std::string::npos);
  CHECK(r.out.find("\n  2 ") != std::string::npos);
}
