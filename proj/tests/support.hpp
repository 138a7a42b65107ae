#pragma once

#include <ostream>

#include "limitlab/space.hpp"

namespace limitlab {

inline void PrintTo(const TreePoint& p, std::ostream* os) { *os << p.edge << ":" << to_string(p.t); }

}  // namespace limitlab
