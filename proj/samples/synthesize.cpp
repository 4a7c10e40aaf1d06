// Learn an abstraction from the training tasks, then synthesize a program for
// a new task with it and with the top-only baseline.

#include <atlas/driver.hpp>
#include <atlas/io.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace atlas;
  const std::string corpus = argc > 1 ? argv[1] : "corpus";
  const auto training = load_task_dir(corpus + "/train");
  const auto learned = learn_abstractions(training);

  const SynthesisTask task{"year", {{U"12/05/2019", U"2019"}, {U"1/2/2020", U"2020"}}, {}};
  for (const auto& [label, abs] : {std::pair{"learned", *learned.abstraction}, std::pair{"top", Abstraction{}}}) {
    const auto r = solve(task, abs);
    std::cout << label << ": " << (r.program ? print(*r.program) : "no program") << " after " << r.stats.enumerated
              << " candidates\n";
  }
}
