#include <benchmark/benchmark.h>

#include "jetkernel/selftest.hpp"

using namespace jetkernel;

namespace {

void run(benchmark::State& state, Suite suite, Execution ex) {
  SelftestOptions o;
  o.execution = ex;
  for (auto _ : state) {
    SuiteResult r = run_suite(suite, 42, o);
    if (!r.ok()) state.SkipWithError("suite failed");
    benchmark::DoNotOptimize(r.passed);
    state.counters["cases"] = static_cast<double>(r.cases);
  }
}

void register_all() {
  for (Suite s : all_suites()) {
    for (Execution ex : {Execution::serial, Execution::parallel}) {
      const std::string name =
          suite_name(s) + (ex == Execution::serial ? "/serial" : "/parallel");
      benchmark::RegisterBenchmark(name.c_str(), [=](benchmark::State& st) { run(st, s, ex); })
          ->Unit(benchmark::kMillisecond)
          ->UseRealTime();
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  register_all();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
