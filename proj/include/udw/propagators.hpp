//! Two-point functions of the massless field in the states used by the
//! detector calculations: the Minkowski vacuum, its pullback to uniformly
//! accelerated worldline pairs, and the thermal state of a static pair.
//!
//! Regularization convention: the physical correlation function is the
//! boundary value of an analytic kernel approached from below the real axis
//! in the time difference. Each kernel is therefore provided twice, once as
//! an analytic function of a complex argument (for contour-shifted
//! quadrature) and once at real argument with an explicit -i eps prescription.

#pragma once

#include <complex>

#include "udw/events.hpp"

namespace udw {

/// Default pole regulator eps = 1e-4 * min(sigma, 1/a) * epsScale.
/// For a <= 0 the 1/a scale drops out and eps = 1e-4 * sigma * epsScale.
double defaultEpsilon(double sigma, double a, double epsScale = 1.0);

/// Vacuum two-point function between events, frequency-splitting regulator on
/// the time difference: -1 / (4 pi^2 [(dx0 - i eps)^2 - |dx|^2]).
std::complex<double> vacuumWightman(const Event& e1, const Event& e2, double eps);

/// Feynman propagator (smooth part): -1 / (4 pi^2 [(dx)^2 - i eps]).
std::complex<double> feynmanPropagator(const Event& e1, const Event& e2, double eps);

/// Two-point function between (or along, r = 0) uniformly accelerated
/// worldlines with common acceleration a and light delay r, as an analytic
/// function of the complex proper-time difference w:
///   -a^2 / (16 pi^2 sinh[a(w - r)/2] sinh[a(w + r)/2]).
/// Returns exactly 0 once the result would underflow (|Re w| huge).
std::complex<double> acceleratedPairKernel(std::complex<double> dtau, double a, double r);

/// Boundary value of acceleratedPairKernel at real dtau with dtau -> dtau - i eps.
std::complex<double> acceleratedPairWightman(double dtau, double a, double r, double eps);

/// Thermal two-point function (regular part) at inverse temperature beta for
/// static detectors at spatial separation d, analytic in the complex
/// coordinate-time difference w:
///   d > 0: -sinh(2 pi d / beta) /
///          (8 pi beta d sinh[pi (w - d)/beta] sinh[pi (w + d)/beta])
///   d = 0: -1 / (4 beta^2 sinh^2[pi w / beta])
/// The coincident branch is used below d < 1e-6 beta.
std::complex<double> thermalKernel(std::complex<double> dt, double beta, double d);

/// Boundary value of thermalKernel at real dt with dt -> dt - i eps.
std::complex<double> thermalWightman(double dt, double beta, double d, double eps);

/// Thermal enhancement of a separated pair relative to the accelerated pair at
/// matched temperature: e(r) = (beta / (2 pi r)) sinh(2 pi r / beta), e(0) = 1.
double thermalEnhancement(double r, double beta);

}  // namespace udw
