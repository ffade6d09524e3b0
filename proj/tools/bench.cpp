// Compares the parallel and serial suite runners on identical case lists
// and checks that both produce the same report.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "lcw/extremal.hpp"

using namespace lcw;
using Clock = std::chrono::steady_clock;

static double timed(const std::string& name, SuiteParams sp, bool parallel,
                    SuiteReport& out) {
  sp.parallel = parallel;
  auto t0 = Clock::now();
  out = run_suite(name, sp);
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
  int cases = argc > 1 ? std::atoi(argv[1]) : 40;
  std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  const char* suites[] = {"restriction-extreme", "pair-extreme",
                          "face-combinators"};
  int mismatches = 0;
  std::printf("%-22s %8s %10s %10s %8s\n", "suite", "cases", "parallel",
              "serial", "speedup");
  for (const char* name : suites) {
    SuiteParams sp;
    sp.random_cases = cases;
    sp.seed = seed;
    SuiteReport rp, rs;
    double tp = timed(name, sp, true, rp);
    double ts = timed(name, sp, false, rs);
    bool same = rp.cases == rs.cases &&
                rp.skipped_unsaturated == rs.skipped_unsaturated &&
                rp.counterexamples.size() == rs.counterexamples.size();
    for (size_t i = 0; same && i < rp.counterexamples.size(); ++i)
      same = rp.counterexamples[i].case_index ==
                 rs.counterexamples[i].case_index &&
             rp.counterexamples[i].detail == rs.counterexamples[i].detail;
    if (!same) ++mismatches;
    std::printf("%-22s %8d %9.2fs %9.2fs %7.2fx%s\n", name, rp.cases, tp, ts,
                tp > 0 ? ts / tp : 0.0, same ? "" : "  REPORT MISMATCH");
  }
  return mismatches == 0 ? 0 : 1;
}
