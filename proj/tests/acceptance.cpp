// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: acceptance <path-to-slicelab-cli> [seed]
#include "slicelab/suite.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace slicelab;

namespace {

// Wall-clock limits in seconds for the criteria that carry one.
constexpr double kLimitCriterion1 = 10.0;
constexpr double kLimitCriterion2 = 60.0;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <slicelab-cli> [seed]\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 7;
  int failed = 0;

  for (int id = 1; id <= 11; ++id) {
    const auto t0 = std::chrono::steady_clock::now();
    const CheckResult r = run_check(id, seed, Budget::quick);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = r.passed;
    std::string extra;
    if (id == 1 || id == 2) {
      const double limit = id == 1 ? kLimitCriterion1 : kLimitCriterion2;
      pass = pass && secs < limit;
      extra = ", limit " + std::to_string(static_cast<int>(limit)) + " s";
    }
    if (!pass) ++failed;
    std::printf("%s criterion %2d: %-34s n=%-4d worst=%.6g threshold=%.6g time=%.1f s%s\n", pass ? "PASS" : "FAIL", id,
                r.name.c_str(), r.executed, r.worst, r.threshold, secs, extra.c_str());
    if (!r.passed) std::printf("     details: %s\n", r.details.dump().c_str());
    std::fflush(stdout);
  }

  const auto dir = std::filesystem::temp_directory_path();
  const std::string a = (dir / "slicelab_suite_a.json").string();
  const std::string b = (dir / "slicelab_suite_b.json").string();
  const std::string base = "\"" + cli + "\" verify-suite --seed " + std::to_string(seed) + " --out ";
  const auto t0 = std::chrono::steady_clock::now();
  const int code_a = run_command(base + "\"" + a + "\"");
  const int code_b = run_command(base + "\"" + b + "\"");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string ja = slurp(a), jb = slurp(b);
  const bool same = !ja.empty() && ja == jb;
  const bool pass = same && code_a == 0 && code_b == 0;
  if (!pass) ++failed;
  std::printf("%s criterion 12: %-34s exit=%d,%d identical=%s bytes=%zu time=%.1f s\n", pass ? "PASS" : "FAIL",
              "determinism (verify-suite twice)", code_a, code_b, same ? "yes" : "no", ja.size(), secs);
  std::printf("%d of 12 criteria passed\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
