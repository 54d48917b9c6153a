#pragma once

// Seeded randomized suites exercising every kernel invariant. Cases draw from
// per-case seeds, so the report depends only on the seed, never on thread
// scheduling.

#include <cstdint>
#include <string>
#include <vector>

#include "jetkernel/parallel.hpp"
#include "jetkernel/serialize.hpp"

namespace jetkernel {

enum class Suite {
  hadamard,
  weil,
  witness_d1,
  witness_point,
  witness_general,
  equivalence,
  lift_plot,
  jets,
};

const std::vector<Suite>& all_suites();
std::string suite_name(Suite s);

struct SelftestOptions {
  Execution execution = Execution::parallel;
  /// Perturbs phi in every witness span before re-verification; the affected
  /// cases must then fail naming the violated identity.
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t passed = 0;
  /// "case <i>: <message>", in case order.
  std::vector<std::string> failures;
  bool ok() const { return passed == cases; }
};

SuiteResult run_suite(Suite suite, std::uint64_t seed, const SelftestOptions& options = {});

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool ok() const;
};

SelftestReport selftest(std::uint64_t seed, const SelftestOptions& options = {});

/// At most `max_failures` messages per suite are listed.
Json to_json(const SelftestReport& report, std::size_t max_failures = 5);

}  // namespace jetkernel
