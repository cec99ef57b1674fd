//! Deterministic windowed quadrature, residue evaluation, and the
//! finite-resolution correction series.
//!
//! The workhorse is integrateWindowed: composite 8-node Gauss-Legendre panels
//! over a Gaussian-truncated window, doubling the panel count until two
//! successive estimates agree. Everything is deterministic: fixed nodes, fixed
//! doubling schedule, compensated (Kahan) accumulation.

#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace udw {

/// Controls for windowed quadrature.
struct QuadratureSpec {
  /// Window half-width in units of the standard deviation of the Gaussian
  /// factor that truncates the integrand. 12 leaves a truncation error of
  /// order exp(-72) relative to the peak.
  double windowSigmas = 12.0;
  /// Initial panel count.
  int panels = 4096;
  /// Panel-doubling convergence tolerance (relative, with an L1-mass floor so
  /// integrals that cancel to ~0 can converge).
  double relTol = 1e-8;
  /// Absolute convergence floor, added to the relative threshold. Subtraction
  /// schemes set this to relTol times the reference term they correct, so a
  /// correction that is pure evaluation noise does not stall the doubling.
  double absTol = 0.0;
  /// Doublings attempted before ConvergenceError.
  int maxDoublings = 16;
  /// Multiplier on the default pole regulator.
  double epsScale = 1.0;
};

struct IntegralResult {
  std::complex<double> value{0.0, 0.0};
  /// Magnitude of the last panel-doubling change.
  double errorEstimate = 0.0;
  /// Integral of |f| at the final resolution.
  double l1 = 0.0;
  /// Panel count of the accepted estimate.
  int panels = 0;
};

/// Integrate f over [lo, hi], doubling panels until
/// |I_2n - I_n| <= relTol * (|I_2n| + 1e-6 * L1) + absTol. Raises
/// ConvergenceError (carrying the last two estimates) if maxDoublings is
/// exhausted. Integrands with known kinks or steps should be integrated
/// piecewise, with the break points as interval endpoints; panel doubling
/// across an interior step stalls at first order.
IntegralResult integrateInterval(const std::function<std::complex<double>(double)>& f,
                                 const QuadratureSpec& spec, double lo, double hi);

/// integrateInterval over [center - W * sigma, center + W * sigma] with
/// W = spec.windowSigmas.
IntegralResult integrateWindowed(const std::function<std::complex<double>(double)>& f,
                                 const QuadratureSpec& spec, double center, double sigma);

/// A pole of an analytically continued integrand.
struct Pole {
  std::complex<double> location;
  int order = 1;
};
using PoleSet = std::vector<Pole>;

/// -2 pi i times the sum of residues of f at the given lower-half-plane
/// poles; equals the full-line integral of a function that decays in the
/// lower half plane. Residues are extracted by Cauchy-circle quadrature
/// around each pole. Poles closer than 10 * eps to the real axis raise
/// DomainError (the circle radius cannot separate pole and axis).
std::complex<double> residueSum(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    const PoleSet& lowerPoles, double eps);

/// Leading finite-resolution correction to the thermal response of a
/// uniformly accelerated detector: the quadrature response relates to the
/// infinite-time (Planck) response by
///   p = planck * (1 + etaSeriesTerm(E, a, sigma) + O((sigma a)^-4)).
/// With z = 2 pi E / a and phi(z) = z / (e^z - 1):
///   etaSeriesTerm = [ (pi^2/2) coth(pi E / a) - pi a / (2 E) ]
///                   / [ (1 - e^{-2 pi E / a}) sigma^2 a^2 ]
/// which is (pi^2 / 2) phi''(z) / phi(z) / (sigma a)^2. Requires E > 0
/// (DomainError) and sigma * a > 1 (RegimeError).
double etaSeriesTerm(double E, double a, double sigma);

}  // namespace udw
