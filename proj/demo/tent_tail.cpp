// Limit sets of g(x) = max{0, 2x-1} at the fixed point 0.
#include <iostream>

#include "limitlab/examples.hpp"
#include "limitlab/limits.hpp"

using namespace limitlab;

int main() {
  const ExampleSystem g = build_tent_tail();
  const TreePoint zero = g.landmark("0");
  const TreeSpace& space = g.space();

  const auto sa = special_alpha_limit_direct(g.map, zero, dyadic(10), 32);
  std::cout << "special alpha(0):";
  for (const auto& p : sa.points) std::cout << " " << format_point(space, p);
  std::cout << (sa.exact ? "  (exact)" : "") << "\n";

  const auto a = alpha_limit(g.map, zero, dyadic(6));
  std::cout << "alpha(0): " << a.points.size() << " points at eps 1/64, hausdorff to [0,1] grid "
            << to_string(hausdorff_distance(space, a.points, make_point_set(space, SubtreeSet::whole(space).sample(space, dyadic(12)))))
            << "\n";

  const auto stay = branch_alpha_limit(g.map, zero, BranchChoice{}, dyadic(10));
  std::cout << "branch alpha(0), staying at 0:";
  for (const auto& p : stay.points) std::cout << " " << format_point(space, p);
  std::cout << "\n";

  const auto w = omega_limit(g.map, space.point(0, make_rational(3, 4)), dyadic(10));
  std::cout << "omega(3/4):";
  for (const auto& p : w.points) std::cout << " " << format_point(space, p);
  std::cout << "\n";
}
