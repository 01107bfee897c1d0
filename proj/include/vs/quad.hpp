#ifndef VS_QUAD_HPP
#define VS_QUAD_HPP

#include <vector>

#include "vs/common.hpp"

namespace vs {

// Cumulative composite-trapezoid integral on a strictly monotone grid.
// Exact for affine integrands; result[i] = integral from x[0] to x[i].
inline std::vector<double> quad_cumulative(const std::vector<double>& x,
                                           const std::vector<double>& f) {
  if (x.size() != f.size() || x.size() < 1)
    throw domain_error("InvalidParam", "quad_cumulative: mismatched or empty samples");
  bool inc = true, dec = true;
  for (size_t i = 1; i < x.size(); ++i) {
    if (x[i] <= x[i - 1]) inc = false;
    if (x[i] >= x[i - 1]) dec = false;
  }
  if (!inc && !dec) throw domain_error("NonMonotoneGrid", "grid must be strictly monotone");
  std::vector<double> out(x.size(), 0.0);
  for (size_t i = 1; i < x.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  return out;
}

}  // namespace vs

#endif  // VS_QUAD_HPP
