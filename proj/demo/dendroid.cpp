// T_1 in the truncated dendroid: nonwandering at the matched resolution,
// yet its forward orbit falls onto T_0.
#include <iostream>

#include "limitlab/classify.hpp"
#include "limitlab/examples.hpp"
#include "limitlab/verify.hpp"

using namespace limitlab;

static void print(const Verdict& v) {
  std::cout << v.query << "(" << v.subject << "): " << to_string(v.outcome) << "  " << v.witness.note << "\n";
}

int main() {
  const ExampleSystem d = build_dendroid_example(8, 12);
  const TreePoint t1 = d.landmark("T1");
  const Rational eps = dendroid_matched_epsilon(12);
  std::cout << d.name << ", matched eps " << to_string(eps) << "\n";
  print(is_recurrent(d.map, t1, eps));
  print(is_nonwandering(d.map, t1, eps));

  SuiteConfig config;
  config.epsilon = eps;
  SystemVerifier sys(d, config);
  const SuiteReport r = run_suite(sys, "omega-eq-ap", std::nullopt);
  std::cout << r.suite << ": " << to_string(r.status) << " (" << r.failed << " failing samples)\n";
}
