#include <gtest/gtest.h>

#include <atomic>

#include "jetkernel/error.hpp"
#include "jetkernel/parallel.hpp"
#include "jetkernel/selftest.hpp"

using namespace jetkernel;

TEST(Parallel, ForEachIndexVisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  for_each_index(hits.size(), Execution::parallel, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) ASSERT_EQ(h.load(), 1);
}

TEST(Parallel, FirstExceptionByIndexIsRethrown) {
  for (Execution ex : {Execution::serial, Execution::parallel}) {
    try {
      for_each_index(100, ex, [](std::size_t i) {
        if (i % 7 == 3) throw Error(ErrorKind::shape, "index " + std::to_string(i));
      });
      FAIL();
    } catch (const Error& e) {
      EXPECT_STREQ(e.what(), "index 3");
    }
  }
}

TEST(Parallel, MapPreservesOrder) {
  auto v = parallel_map<std::size_t>(50, Execution::parallel, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < v.size(); ++i) ASSERT_EQ(v[i], i * i);
}

class SuiteEquivalence : public ::testing::TestWithParam<Suite> {};

TEST_P(SuiteEquivalence, SerialAndParallelAgree) {
  SelftestOptions serial{Execution::serial, false};
  SelftestOptions parallel{Execution::parallel, false};
  SuiteResult a = run_suite(GetParam(), 7, serial);
  SuiteResult b = run_suite(GetParam(), 7, parallel);
  EXPECT_EQ(a.cases, b.cases);
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.failures, b.failures);
  EXPECT_TRUE(b.ok()) << (b.failures.empty() ? "" : b.failures.front());
}

INSTANTIATE_TEST_SUITE_P(AllSuites, SuiteEquivalence, ::testing::ValuesIn(all_suites()),
                         [](const auto& info) { return suite_name(info.param); });

TEST(Selftest, InjectedFaultIsCaught) {
  SelftestOptions o;
  o.inject_fault = true;
  SuiteResult r = run_suite(Suite::witness_d1, 42, o);
  EXPECT_LT(r.passed, r.cases);
  ASSERT_FALSE(r.failures.empty());
  EXPECT_NE(r.failures.front().find("phi o alpha"), std::string::npos) << r.failures.front();
}
