// Periodic structure and special alpha-limit sets on the star maps f_N and
// on the truncated infinite star.
#include <iostream>

#include "limitlab/classify.hpp"
#include "limitlab/examples.hpp"
#include "limitlab/limits.hpp"

using namespace limitlab;

int main() {
  for (std::size_t n : {1, 2, 5}) {
    const ExampleSystem s = build_star_map(n);
    const auto pp = periodic_points(s.map, n);
    std::cout << s.name << ": " << pp.orbits.size() << " periodic orbits up to period " << n << " (";
    for (const auto& o : pp.orbits) std::cout << " " << o.period;
    std::cout << " )\n";
    const auto sa = special_alpha_limit_direct(s.map, s.landmark("z0"), dyadic(10));
    std::cout << "  special alpha(z0) has " << sa.points.size() << " points\n";
  }

  const ExampleSystem inf = build_infinite_star(6);
  const TreePoint z0 = inf.landmark("z0");
  const auto sa = special_alpha_limit_direct(inf.map, z0, dyadic(10));
  std::cout << inf.name << ": special alpha(z0) has " << sa.points.size() << " points; " << sa.note << "\n";
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto orbit = infinite_star_orbit(inf, n);
    std::cout << "  d_H(M_" << n << ", {z0}) = "
              << to_string(hausdorff_distance(inf.space(), make_point_set(inf.space(), orbit),
                                              make_point_set(inf.space(), {z0})))
              << "\n";
  }
}
