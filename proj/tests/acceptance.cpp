// One line per acceptance criterion; exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <string>

#include "jetkernel/selftest.hpp"

using namespace jetkernel;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr double kHadamardSeconds = 10.0;
constexpr double kWitnessD1Seconds = 30.0;

struct Criterion {
  int id;
  Suite suite;
  std::size_t min_cases;
  double max_seconds;  // 0: no time bound
};

const Criterion kCriteria[] = {
    {1, Suite::hadamard, 500, kHadamardSeconds},
    {2, Suite::weil, 786, 0},
    {3, Suite::witness_d1, 100, kWitnessD1Seconds},
    {4, Suite::witness_point, 100, 0},
    {5, Suite::witness_general, 60, 0},
    {6, Suite::equivalence, 200, 0},
    {7, Suite::lift_plot, 200, 0},
    {8, Suite::jets, 506, 0},
};

}  // namespace

int main() {
  bool all = true;
  for (const auto& c : kCriteria) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r = run_suite(c.suite, kSeed);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = r.ok() && r.cases >= c.min_cases && (c.max_seconds == 0 || secs < c.max_seconds);
    all = all && ok;
    std::printf("criterion %d %-16s %s  cases=%zu passed=%zu time=%.3fs", c.id, r.name.c_str(),
                ok ? "PASS" : "FAIL", r.cases, r.passed, secs);
    if (c.max_seconds > 0) std::printf(" (limit %.0fs)", c.max_seconds);
    if (!r.failures.empty()) std::printf("  first failure: %s", r.failures.front().c_str());
    std::printf("\n");
  }

  const std::string a = to_json(selftest(kSeed)).dump(2);
  const std::string b = to_json(selftest(kSeed)).dump(2);
  SelftestOptions serial;
  serial.execution = Execution::serial;
  const std::string s = to_json(selftest(kSeed, serial)).dump(2);
  const bool det = a == b && a == s;
  all = all && det;
  std::printf("criterion 9 determinism      %s  report bytes=%zu, repeated run %s, serial run %s\n",
              det ? "PASS" : "FAIL", a.size(), a == b ? "identical" : "differs",
              a == s ? "identical" : "differs");
  return all ? 0 : 1;
}
