//! Two-detector correlations and the second-order coherence g2.
//!
//! For a pair of identical detectors the joint detection statistics split
//! into a product of single-detector responses plus an interference term
//! that is diagonal in energy: coefficient(E, dtau) * delta(E1 - E2). The
//! closed-form coefficients below are non-positive, so the interference is
//! anti-bunching in every closed-form regime. g2 is assembled as
//!   g2(dtau) = 1 + int dE E^2 coefficient(E, dtau) / (int dE E p(E))^2,
//! where the absorption-profile normalization cancels between numerator and
//! denominator.

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "udw/quadrature.hpp"
#include "udw/response.hpp"

namespace udw {

/// Equal-energy correlation coefficient as a function of (E, dtau), tagged
/// with the regime of the expression that produced it.
struct CorrelationDensity {
  std::function<double(double E, double dtau)> coefficient;
  std::string regime;
};

/// g2 sampled on a detector-time-difference grid.
struct CoherenceCurve {
  std::vector<double> dtau;
  std::vector<double> g2;
  double r = 0.0;
  std::string method;
};

/// Four-pole correlation integral for an accelerated pair:
///   H(S) = int dx e^{-i Etil x} gSigma(sqrt(2) x, sigma)
///          / ( sinh[a(x-u)/2] sinh[a(x+u)/2] sinh[a(x-v)/2] sinh[a(x+v)/2] )
/// with u = S + r, v = S - r, Etil = 2E, evaluated on a pole-free contour
/// below the real axis. Satisfies H(S)* = H(-S).
std::complex<double> hFunctionNumeric(double S, double E, double a, double r, double sigma,
                                      const QuadratureSpec& spec);

/// Numeric same-energy coefficient (alpha^2 included):
///   alpha(E)^2 (a^4 / 64 pi^3) int dS fSigma(dtau - S) H(S).
double gCoefficientNumeric(double E, double dtau, double a, double r,
                           const DetectorModel& det, const QuadratureSpec& spec);

/// Closed-form coefficient for a coincident pair (r <= 0.01/a; also requires
/// E sigma >= 10). With Etil = 2E:
///   -alpha^2 (Etil^2 / 8 pi) coth(pi Etil / 2a) / (e^{2 pi Etil / a} - 1)
///                                                        * fSigma(dtau).
double gCoefficientNear(double E, double dtau, double a, double r, const DetectorModel& det);

/// Closed-form coefficient for a well-separated pair (r >= 8 sigma):
///   -alpha^2 (a^2 / 8 pi) tanh(pi Etil / 2a) / ((e^{2 pi Etil/a}-1) sinh^2(a r))
///       * [fSigma(dtau - r) + fSigma(dtau + r)]
/// reduced to the e^{-2 a r} tail form once a r >= 5.
double gCoefficientFar(double E, double dtau, double a, double r, const DetectorModel& det);

/// Static pair in a thermal bath at inverse temperature beta. Coincident
/// (r < 1e-12 / beta scale) it equals the accelerated near form at
/// a = 2 pi / beta; separated (r >= 8 sigma) it is
///   -alpha^2 / (8 pi r^2) tanh(beta Etil / 4) / (e^{beta Etil} - 1)
///       * [fSigma(dtau - r) + fSigma(dtau + r)].
/// Intermediate separations raise RegimeError (numeric-only regime).
double gCoefficientThermal(double E, double dtau, double beta, double r,
                           const DetectorModel& det);

/// Joint detection density for an accelerated pair: the product of the two
/// single-detector Planck responses plus the equal-energy interference
/// coefficient, evaluated at the mean energy when |E1 - E2| < 1/sigma and
/// zero otherwise (the energy-diagonal delta at finite resolution).
struct JointProbability {
  double productPart = 0.0;
  double sameEnergyCoefficient = 0.0;
};

JointProbability jointProbability(double E1, double tau1, double E2, double tau2, double a,
                                  double r, const DetectorModel& det,
                                  const QuadratureSpec& spec);

/// g2 from an arbitrary equal-energy coefficient at fixed dtau, for a
/// uniformly accelerated pair (Planck denominator):
///   1 + int dE E^2 coeff(E) / (int dE E alpha(E) E / (2 pi (e^{2piE/a}-1)))^2
/// integrated over the absorption support.
double g2Assembled(const std::function<double(double)>& coefficientAtE,
                   const DetectorModel& det, double a);

/// Same with the thermal (beta) denominator, matching gCoefficientThermal.
double g2AssembledThermal(const std::function<double(double)>& coefficientAtE,
                          const DetectorModel& det, double beta);

/// Narrow-band shortcut for a coincident two-level pair:
/// g2(dtau) = 1 - (2 pi / deltaE) fSigma(dtau).
double g2TwoLevelNear(double dtau, const DetectorModel& det);

/// g2(dtau) on a grid for a coincident accelerated two-level pair.
CoherenceCurve g2CurveTwoLevelNear(const std::vector<double>& dtauGrid,
                                   const DetectorModel& det);

/// Full-line side integral int dx sin(E x) / sinh(a x) = (pi / a) tanh(pi E / 2a).
double oddSineIntegral(double E, double a);

/// Full-line side integral
///   int dS [E cos(E S) - a coth(a S) sin(E S)] / sinh^2(a S)
///     = -(pi E^2 / 2 a^2) coth(pi E / 2a).
/// E = 0 raises DomainError.
double evenBracketIntegral(double E, double a);

/// Gaussian suppression of the Feynman (same-detector pairing) channel:
/// |int dx gSigma(sqrt(2) x) e^{-i Etil x}| = sqrt(4 pi sigma^2) e^{-sigma^2 Etil^2}
/// with Etil = 2E.
double feynmanPairSuppression(double E, double sigma);

}  // namespace udw
