//! Minkowski events and invariant intervals, metric signature (+,-,-,-).

#pragma once

#include <array>

namespace udw {

/// A spacetime point in global inertial coordinates (x0 = coordinate time).
struct Event {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

/// Invariant interval squared between two events:
/// (dx0)^2 - (dx1)^2 - (dx2)^2 - (dx3)^2.
double intervalSquared(const Event& e1, const Event& e2);

/// Minkowski norm of a tangent vector (components indexed like Event).
double minkowskiNorm(const std::array<double, 4>& v);

}  // namespace udw
