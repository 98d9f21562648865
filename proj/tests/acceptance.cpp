// Prints one PASS/FAIL line per acceptance criterion. Exit status 1 when
// any blocking criterion fails.

#include <iostream>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "tgmaps/acceptance.hpp"

using namespace tgmaps;

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  McSettings mc;
  app.add_option("--criterion", only, "criteria to run (default: all)")->check(CLI::Range(1, 13));
  app.add_option("--faces", mc.faces, "faces for criteria 11 and 13");
  app.add_option("--screening-faces", mc.screening_faces, "faces for criterion 12");
  app.add_option("--trials", mc.trials, "trials per Monte-Carlo run");
  app.add_option("--seed", mc.seed, "Monte-Carlo seed");
  app.add_option("--threads", mc.threads, "threads for the parallel runs")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::set<int> want(only.begin(), only.end());
  if (want.empty())
    for (int i = 1; i <= 13; ++i) want.insert(i);

  const std::vector<std::function<CriterionResult()>> exact = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                               criterion_5, criterion_6, criterion_7, criterion_8,
                                                               criterion_9, criterion_10};
  bool failed = false;
  auto report = [&](const CriterionResult& r) {
    std::cout << r.line() << std::endl;
    if (!r.pass && r.blocking) failed = true;
  };
  for (int id = 1; id <= 10; ++id)
    if (want.count(id)) report(exact[id - 1]());

  std::optional<McCriteria> parallel, serial;
  if (want.count(11) || want.count(13)) parallel = run_mc(mc, mc.threads);
  if (want.count(11)) report(criterion_11(*parallel));
  if (want.count(12)) report(criterion_12(mc, mc.threads));
  if (want.count(13)) {
    serial = run_mc(mc, 1);
    report(criterion_13(*serial, *parallel, mc.threads));
  }
  return failed ? 1 : 0;
}
