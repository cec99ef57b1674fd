//! Timelike worldlines parameterized by proper time.
//!
//! Four trajectory families are supported:
//!   UniformAcceleration - hyperbolic motion along x1 with proper acceleration a;
//!   StaticWorldline     - inertial detector at rest;
//!   VariableAcceleration- single-axis motion built from a proper-time
//!                         acceleration profile a(tau), integrated once over a
//!                         fixed range and cached;
//!   SingleAxisNull      - single-axis motion given directly through the null
//!                         coordinates u = x0 + x1 and v = x0 - x1.
//!
//! Rapidity bookkeeping: for single-axis motion du/dtau = e^chi and
//! dv/dtau = e^-chi with chi(tau) the rapidity, so du/dtau * dv/dtau = 1 on any
//! properly normalized worldline. VariableAcceleration caches chi on a grid;
//! null-coordinate increments around a proper time tau are accumulated in
//! linear space relative to chi(tau), never as differences of the (possibly
//! astronomically large) global coordinates, which keeps response integrals
//! finite and cancellation-free deep into the high-rapidity regime.

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "udw/events.hpp"

namespace udw {

/// Hyperbolic worldline x(tau) = offset + (sinh(a tau)/a, (cosh(a tau)-1)/a, 0, 0).
/// At tau = 0 the detector is momentarily at rest at `offset`.
struct UniformAcceleration {
  double a = 1.0;
  std::array<double, 4> offset{0.0, 0.0, 0.0, 0.0};
};

/// Inertial worldline x(tau) = (tau, position).
struct StaticWorldline {
  std::array<double, 3> position{0.0, 0.0, 0.0};
};

/// Single-axis worldline integrated from an acceleration profile a(tau).
///
/// chi(tauMin) = 0 and x(tauMin) = (tauMin, 0, 0, 0). The profile is sampled
/// once at construction on a uniform grid over [tauMin, tauMax]; evaluation
/// outside that range raises DomainError. Integration runs strictly forward,
/// so editing the profile beyond some tau leaves every cached value at earlier
/// proper times bit-identical.
class VariableAcceleration {
 public:
  VariableAcceleration(std::function<double(double)> aOfTau, double tauMin, double tauMax);

  double tauMin() const { return tauMin_; }
  double tauMax() const { return tauMax_; }

  /// Profile value a(tau) (direct call into the stored profile).
  double aAt(double tau) const;
  /// d a / d tau by fourth-order central differences of the profile.
  double aDotAt(double tau) const;
  /// Rapidity chi(tau) (cubic Hermite on the cached grid; slope is a(tau)).
  double chiAt(double tau) const;

  Event positionAt(double tau) const;
  /// (cosh chi, sinh chi, 0, 0).
  std::array<double, 4> velocityAt(double tau) const;

  /// Null-coordinate increments of the worldline between tau - y/2 and
  /// tau + y/2, rescaled to the instantaneous rest frame at tau:
  ///   Ju = e^{-chi(tau)} * (u(tau+y/2) - u(tau-y/2)),
  ///   Jv = e^{+chi(tau)} * (v(tau+y/2) - v(tau-y/2)).
  /// Both reduce to y as y -> 0. Accumulated outward from tau in linear
  /// space (never by differencing global coordinates, whose spread can dwarf
  /// a local increment by hundreds of orders of magnitude), so they stay
  /// accurate and finite as long as |chi(tau +- y/2) - chi(tau)| stays below
  /// ~700 (RegimeError beyond). Cost is one pass over the cached grid
  /// between the endpoints; quadrature loops should use incrementTable.
  struct NullIncrements {
    double ju = 0.0;
    double jv = 0.0;
  };
  NullIncrements nullIncrements(double tau, double y) const;

  struct Cache;  // exposed for the implementation file only

  /// O(1)-query batch of null increments around a fixed tau: the anchored
  /// prefix integrals of e^{+-(chi - chi(tau))} are accumulated once,
  /// outward from tau over [tau - halfWidth, tau + halfWidth] (clipped to
  /// the cached range). Increments between two interior events then combine
  /// opposite-signed prefixes and never cancel. Rapidity excursions beyond
  /// ~700 inside the span raise RegimeError at build time.
  class IncrementTable {
   public:
    /// Same contract as nullIncrements; DomainError outside the span.
    NullIncrements at(double y) const;

   private:
    friend class VariableAcceleration;
    IncrementTable() = default;
    std::shared_ptr<const Cache> cache_;
    double tauMin_ = 0.0;
    double tau_ = 0.0;
    double chiTau_ = 0.0;
    int jLo_ = 0;              ///< first node of the span
    std::vector<double> mu_;   ///< int_tau^node e^{+(chi-chiTau)} per node
    std::vector<double> mv_;   ///< int_tau^node e^{-(chi-chiTau)} per node
  };
  IncrementTable incrementTable(double tau, double halfWidth) const;

  /// Coordinate time x0(tau) relative to the anchor x0(tauMin) = tauMin.
  double coordinateTimeAt(double tau) const;

 private:
  std::function<double(double)> a_;
  double tauMin_ = 0.0;
  double tauMax_ = 0.0;
  std::shared_ptr<const Cache> cache_;

  double logIntExpChi(double tau) const;   // log of int_tauMin^tau e^{chi}
  double logIntExpMChi(double tau) const;  // log of int_tauMin^tau e^{-chi}
};

/// Single-axis worldline through its null coordinates u(tau), v(tau).
/// Derivative callables are optional per order (index 0 -> first derivative);
/// absent entries fall back to central finite differences.
struct SingleAxisNull {
  std::function<double(double)> u;
  std::function<double(double)> v;
  std::array<std::function<double(double)>, 3> uDerivatives{};
  std::array<std::function<double(double)>, 3> vDerivatives{};
};

using Worldline =
    std::variant<UniformAcceleration, StaticWorldline, VariableAcceleration, SingleAxisNull>;

/// Position of the worldline at proper time tau.
Event position(const Worldline& w, double tau);

/// Proper-time derivative of the coordinate position, order in {1, 2, 3}.
/// Analytic where the family allows it, finite differences otherwise.
std::array<double, 4> derivative(const Worldline& w, double tau, int order);

/// Magnitude of the proper acceleration at tau.
double properAcceleration(const Worldline& w, double tau);

/// Invert the (strictly monotone) map tau -> x0(tau). Exact for uniform
/// acceleration and static worldlines; bracketed root find to a relative
/// tolerance of 1e-12 for the other families.
double properTimeOfCoordinateTime(const Worldline& w, double t);

/// Proper time a light signal needs between two uniformly accelerated
/// worldlines with common acceleration a separated by proper distance d
/// transverse to the motion: r = (2/a) asinh(a d / 2). a <= 0 or d < 0 raise
/// DomainError.
double lightDelay(double a, double d);

/// Geometry of a uniformly accelerated detector pair.
struct PairGeometry {
  double a = 1.0;  ///< common proper acceleration
  double d = 0.0;  ///< proper separation transverse to the motion
  double r = 0.0;  ///< light delay between the worldlines
};

PairGeometry makePairGeometry(double a, double d);

}  // namespace udw
