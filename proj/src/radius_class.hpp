#pragma once

#include <cmath>

namespace diskdense {

// ceil(log2(r)) for r > 0, computed exactly from the binary exponent.
inline int radius_class(double r) {
  int e = 0;
  const double m = std::frexp(r, &e);  // r = m * 2^e, m in [0.5, 1)
  return m == 0.5 ? e - 1 : e;
}

}  // namespace diskdense
