//! Single-detector response: detection probability density p(E) at detection
//! time tau for a macroscopic detector with Gaussian temporal resolution
//! sigma and absorption profile alpha(E) (units 1/energy^2).
//!
//! p(E) = alpha(E) * Re int dy gSigma(y) e^{-iEy} K(tau; y), with K the
//! worldline pullback of the state's two-point function. Closed forms are
//! provided where they exist (thermal/Planck for uniform acceleration, the
//! truncated null-coordinate expansion for general single-axis motion); the
//! general path is windowed quadrature with an exact osculating-hyperbola
//! subtraction so only regular integrands ever meet the quadrature engine.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "udw/quadrature.hpp"
#include "udw/worldlines.hpp"

namespace udw {

/// Narrow-band absorber: alpha(E) = 1/deltaE^2 inside
/// [E0 - deltaE/2, E0 + deltaE/2], zero outside. Validity requires
/// deltaE * sigma >= 10 (band resolved) and E0 / deltaE >= 10 (narrow band).
struct TwoLevel {
  double E0 = 1.0;
  double deltaE = 0.1;
};

/// Absorption profile tabulated on a strictly increasing energy grid;
/// linear interpolation inside, zero outside.
struct TabulatedAlpha {
  std::vector<double> energy;
  std::vector<double> value;
};

/// Arbitrary absorption profile with an explicit support interval
/// [supportMin, supportMax] used by energy-integrated quantities.
struct CallableAlpha {
  std::function<double(double)> fn;
  double supportMin = 0.0;
  double supportMax = 0.0;
};

using AlphaModel = std::variant<TwoLevel, TabulatedAlpha, CallableAlpha>;

/// A macroscopic detector: temporal resolution sigma, absorption profile,
/// and a multiplier on the default pole regulator.
struct DetectorModel {
  double sigma = 1.0;
  AlphaModel alpha = TwoLevel{};
  double epsScale = 1.0;
};

/// Validates sigma > 0, epsScale > 0, profile sanity, and the TwoLevel
/// regime guards (RegimeError when violated).
DetectorModel makeDetector(double sigma, AlphaModel alpha, double epsScale = 1.0);

double alphaAt(const DetectorModel& det, double E);

/// Support [lo, hi] of the absorption profile (band edges, grid extent, or
/// the declared callable support).
std::pair<double, double> alphaSupport(const DetectorModel& det);

/// Detection spectrum on an energy grid at fixed detection time.
struct Spectrum {
  std::vector<double> energies;
  std::vector<double> values;
  std::vector<double> errors;
  double tau = 0.0;
  std::string method;
};

/// Raises DomainError if any value dips below -10 * relTol * max(values).
void checkSpectrumNonnegative(const Spectrum& s, double relTol);

struct ResponseResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

/// Response by windowed quadrature of the pulled-back two-point function.
/// Uniformly accelerated and static worldlines use the stationary kernels on
/// a pole-free shifted contour; the profile-driven families use the
/// osculating-hyperbola subtraction on the real axis.
ResponseResult responseGeneralDetailed(const Worldline& w, double E, double tau,
                                       const DetectorModel& det, const QuadratureSpec& spec);
double responseGeneral(const Worldline& w, double E, double tau, const DetectorModel& det,
                       const QuadratureSpec& spec);

/// Infinite-resolution thermal response of a uniformly accelerated detector:
/// alpha(E) E / (2 pi (e^{2 pi E / a} - 1)). E must be positive.
double planckResponse(double E, double a, const DetectorModel& det);

/// planckResponse times (1 + etaSeriesTerm). Requires sigma * a >= 3
/// (RegimeError; below that the dropped (sigma a)^-4 terms are not small).
double planckWithCorrection(double E, double a, const DetectorModel& det);

/// Static detector immersed in a thermal bath at inverse temperature beta
/// (windowed quadrature of the thermal kernel).
ResponseResult thermalStaticResponse(double E, double beta, const DetectorModel& det,
                                     const QuadratureSpec& spec);

/// Planck response at the instantaneous acceleration a(tau). Requires
/// |da/dtau| sigma / a < 0.1 and a sigma > 3 (RegimeError otherwise).
double adiabaticResponse(const VariableAcceleration& w, double E, double tau,
                         const DetectorModel& det);

/// Proper-time derivatives of the null coordinates at the detection time:
/// first and third derivatives of u and v (the second derivatives do not
/// enter the truncated expansion once du1 * dv1 = 1 is used).
struct NullDerivatives {
  double du1 = 1.0;
  double du3 = 0.0;
  double dv1 = 1.0;
  double dv3 = 0.0;
};

NullDerivatives nullDerivatives(const Worldline& w, double tau);

/// Pole pattern of the truncated null-increment polynomials
/// du1 * y (1 + (du3/du1) y^2 / 24) and the v analog.
enum class TruncatedPoleCase {
  TwoPoles,   ///< both ratios du3/du1, dv3/dv1 positive: two conjugate pairs
  Merged,     ///< the two pole pairs coincide (double pole)
  SinglePole, ///< one ratio positive, one negative
  Vanishing   ///< both ratios negative: all poles real, response vanishes
};

TruncatedPoleCase classifyTruncatedPoles(const NullDerivatives& nd);

/// Closed-form response of the lowest (cubic) truncated null-coordinate
/// expansion in the long-window limit. alphaE is alpha(E); E must be
/// positive. With bu = sqrt(24 du1 / du3), bv likewise and
/// D = du1 dv3 - dv1 du3:
///   two poles: (alphaE / 4 pi) [ sqrt(dv3^3 / (24 dv1^3)) e^{-E bv}
///                               - sqrt(du3^3 / (24 du1^3)) e^{-E bu} ] / D
///   merged (b = bu = bv): 72 alphaE (E + 3/b) e^{-E b} / (pi du3 dv3 b^4)
///   single pole: the surviving conjugate-pair term of the two-pole form
///   vanishing: exactly 0.
double singleAxisClosedForm(const NullDerivatives& nd, double E, double alphaE);

/// Independent check: quadrature of the truncated integrand along a contour
/// shifted below every (real or complex) pole image.
double singleAxisTruncatedQuadrature(const NullDerivatives& nd, double E, double alphaE,
                                     const QuadratureSpec& spec);

/// Response from the truncated expansion at the worldline's own derivatives.
/// Only truncationOrder == 1 (the cubic truncation) is supported; other
/// orders raise DomainError.
double singleAxisResponse(const Worldline& w, double E, double tau, const DetectorModel& det,
                          int truncationOrder = 1);

/// Intensity I(tau) = int dE E p(E), trapezoid on the stored grid.
double intensity(const Spectrum& s);

}  // namespace udw
