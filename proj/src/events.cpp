#include "udw/events.hpp"

namespace udw {

double intervalSquared(const Event& e1, const Event& e2) {
  const double d0 = e1.x0 - e2.x0;
  const double d1 = e1.x1 - e2.x1;
  const double d2 = e1.x2 - e2.x2;
  const double d3 = e1.x3 - e2.x3;
  return d0 * d0 - d1 * d1 - d2 * d2 - d3 * d3;
}

double minkowskiNorm(const std::array<double, 4>& v) {
  return v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3];
}

}  // namespace udw
