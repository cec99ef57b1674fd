#include "udw/coherence.hpp"

#include <algorithm>
#include <cmath>

#include "udw/errors.hpp"
#include "udw/propagators.hpp"
#include "udw/smearing.hpp"

namespace udw {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;
const std::complex<double> kI{0.0, 1.0};

int pow2Ceil(double x) {
  int p = 1;
  while (p < x && p < (1 << 24)) p *= 2;
  return p;
}

/// Real-valued adaptive integral over a finite interval, reusing the windowed
/// engine (the window is the interval itself).
double integrateInterval(const std::function<double(double)>& f, double lo, double hi,
                         double relTol) {
  if (!(hi > lo)) throw DomainError("integrateInterval: empty interval");
  QuadratureSpec spec;
  spec.panels = 128;
  spec.relTol = relTol;
  spec.maxDoublings = 10;
  const double center = 0.5 * (lo + hi);
  const double sigma = (hi - lo) / (2.0 * spec.windowSigmas);
  const auto g = [&](double x) { return std::complex<double>{f(x), 0.0}; };
  return integrateWindowed(g, spec, center, sigma).value.real();
}

/// Planck intensity integrand E * p(E) with p = alpha E / (2 pi (e^{zE} - 1)).
double intensityIntegrand(const DetectorModel& det, double E, double thermalExponent) {
  const double z = thermalExponent * E;
  const double bose = std::abs(z) < 1e-8 ? 1.0 / (thermalExponent * (1.0 + 0.5 * z))
                                         : E / std::expm1(z);
  return alphaAt(det, E) * E * bose / kTwoPi;
}

double g2FromParts(const std::function<double(double)>& coefficientAtE,
                   const DetectorModel& det, double thermalExponent) {
  const auto [lo, hi] = alphaSupport(det);
  if (!(lo >= 0.0))
    throw DomainError("g2 assembly requires a non-negative-energy absorption support");
  const double numer =
      integrateInterval([&](double E) { return E * E * coefficientAtE(E); }, lo, hi, 1e-9);
  const double i1 = integrateInterval(
      [&](double E) { return intensityIntegrand(det, E, thermalExponent); }, lo, hi, 1e-9);
  if (i1 <= 0.0) throw DomainError("g2 assembly: vanishing single-detector intensity");
  return 1.0 + numer / (i1 * i1);
}

}  // namespace

std::complex<double> hFunctionNumeric(double S, double E, double a, double r, double sigma,
                                      const QuadratureSpec& spec) {
  if (!(a > 0.0)) throw DomainError("hFunctionNumeric: acceleration must be positive");
  if (!(sigma > 0.0)) throw DomainError("hFunctionNumeric: sigma must be positive");
  if (r < 0.0) throw DomainError("hFunctionNumeric: light delay must be non-negative");
  const double eTil = 2.0 * E;
  const double u = S + r;
  const double v = S - r;

  const double depth = std::min(1.4 / a, 1.2 * sigma);
  // The Gaussian factor dies by |x| ~ 12 sigma sqrt(2); the sinh^4 growth
  // additionally kills everything beyond the outermost pole pair plus a few
  // thermal lengths. Use whichever window is smaller.
  const double halfWidth = std::min(spec.windowSigmas * sigma * std::sqrt(2.0),
                                    std::max(std::abs(u), std::abs(v)) + 13.0 / a + 2.0 / eTil);
  QuadratureSpec local = spec;
  local.panels = std::clamp(pow2Ceil(2.0 * halfWidth / (0.55 * depth)), 64, 32768);
  local.relTol = std::max(spec.relTol, 1e-7);
  local.maxDoublings = 3;

  const double halfA = 0.5 * a;
  const auto f = [&](double t) -> std::complex<double> {
    const std::complex<double> z{t, -depth};
    const double guard = std::abs(halfA * (t - u)) + std::abs(halfA * (t + u)) +
                         std::abs(halfA * (t - v)) + std::abs(halfA * (t + v));
    if (guard > 690.0) return {0.0, 0.0};
    const std::complex<double> num =
        std::exp(-kI * eTil * z) * std::exp(-z * z / (4.0 * sigma * sigma));
    const std::complex<double> den =
        std::sinh(halfA * (z - u)) * std::sinh(halfA * (z + u)) *
        std::sinh(halfA * (z - v)) * std::sinh(halfA * (z + v));
    return num / den;
  };
  return integrateWindowed(f, local, 0.0, halfWidth / local.windowSigmas).value;
}

double gCoefficientNumeric(double E, double dtau, double a, double r,
                           const DetectorModel& det, const QuadratureSpec& spec) {
  const double sigma = det.sigma;
  const double eTil = 2.0 * E;
  const double alpha = alphaAt(det, E);
  if (alpha == 0.0) return 0.0;

  // The S integrand is fSigma(dtau - S) H(S); H decays like e^{-2a|S - +-r|}
  // away from its pole clusters inside [-r - 13/a, r + 13/a], so a window
  // centered at dtau only ever needs to reach the far end of that interval,
  // even when sigma a is large.
  const double halfWidth = std::min(spec.windowSigmas * sigma,
                                    std::abs(dtau) + r + 13.0 / a + 2.0 / eTil);
  const double featureScale = std::min({1.0 / eTil, 1.0 / a, sigma});
  QuadratureSpec outer = spec;
  outer.panels = std::clamp(pow2Ceil(2.0 * halfWidth / (0.35 * featureScale)), 64, 16384);
  outer.relTol = std::max(spec.relTol, 1e-6);
  outer.maxDoublings = 2;

  const auto f = [&](double S) -> std::complex<double> {
    return fSigma(dtau - S, sigma) * hFunctionNumeric(S, E, a, r, sigma, spec);
  };
  const IntegralResult res = integrateWindowed(f, outer, dtau, halfWidth / outer.windowSigmas);
  const double a4 = a * a * a * a;
  return alpha * alpha * a4 / (64.0 * kPi * kPi * kPi) * res.value.real();
}

double gCoefficientNear(double E, double dtau, double a, double r, const DetectorModel& det) {
  if (!(a > 0.0)) throw DomainError("gCoefficientNear: acceleration must be positive");
  if (!(E > 0.0)) throw DomainError("gCoefficientNear: energy must be positive");
  if (!(r <= 0.01 / a))
    throw RegimeError("gCoefficientNear: requires a coincident pair (r <= 0.01 / a)");
  if (!(E * det.sigma >= 10.0))
    throw RegimeError("gCoefficientNear: requires E sigma >= 10");
  const double eTil = 2.0 * E;
  const double alpha = alphaAt(det, E);
  return -alpha * alpha * eTil * eTil / (8.0 * kPi) / std::tanh(kPi * eTil / (2.0 * a)) /
         std::expm1(kTwoPi * eTil / a) * fSigma(dtau, det.sigma);
}

double gCoefficientFar(double E, double dtau, double a, double r, const DetectorModel& det) {
  if (!(a > 0.0)) throw DomainError("gCoefficientFar: acceleration must be positive");
  if (!(E > 0.0)) throw DomainError("gCoefficientFar: energy must be positive");
  if (!(r >= 8.0 * det.sigma))
    throw RegimeError("gCoefficientFar: requires a well-separated pair (r >= 8 sigma)");
  const double eTil = 2.0 * E;
  const double alpha = alphaAt(det, E);
  const double tail = fSigma(dtau - r, det.sigma) + fSigma(dtau + r, det.sigma);
  const double spectral = std::tanh(kPi * eTil / (2.0 * a)) / std::expm1(kTwoPi * eTil / a);
  const double geometry = a * r >= 5.0
                              ? a * a / kTwoPi * std::exp(-2.0 * a * r)
                              : a * a / (8.0 * kPi) / std::pow(std::sinh(a * r), 2);
  return -alpha * alpha * geometry * spectral * tail;
}

double gCoefficientThermal(double E, double dtau, double beta, double r,
                           const DetectorModel& det) {
  if (!(beta > 0.0)) throw DomainError("gCoefficientThermal: beta must be positive");
  if (r <= 1e-12 * std::max(beta, det.sigma))
    return gCoefficientNear(E, dtau, kTwoPi / beta, 0.0, det);
  if (!(r >= 8.0 * det.sigma))
    throw RegimeError(
        "gCoefficientThermal: intermediate separations have no closed form; use the numeric "
        "path");
  if (!(E > 0.0)) throw DomainError("gCoefficientThermal: energy must be positive");
  const double eTil = 2.0 * E;
  const double alpha = alphaAt(det, E);
  const double tail = fSigma(dtau - r, det.sigma) + fSigma(dtau + r, det.sigma);
  return -alpha * alpha / (8.0 * kPi * r * r) * std::tanh(0.25 * beta * eTil) /
         std::expm1(beta * eTil) * tail;
}

JointProbability jointProbability(double E1, double tau1, double E2, double tau2, double a,
                                  double r, const DetectorModel& det,
                                  const QuadratureSpec& spec) {
  JointProbability out;
  out.productPart = planckResponse(E1, a, det) * planckResponse(E2, a, det);
  if (std::abs(E1 - E2) >= 1.0 / det.sigma) return out;
  const double E = 0.5 * (E1 + E2);
  const double dtau = tau2 - tau1;
  if (r <= 0.01 / a)
    out.sameEnergyCoefficient = gCoefficientNear(E, dtau, a, r, det);
  else if (r >= 8.0 * det.sigma)
    out.sameEnergyCoefficient = gCoefficientFar(E, dtau, a, r, det);
  else
    out.sameEnergyCoefficient = gCoefficientNumeric(E, dtau, a, r, det, spec);
  return out;
}

double g2Assembled(const std::function<double(double)>& coefficientAtE,
                   const DetectorModel& det, double a) {
  if (!(a > 0.0)) throw DomainError("g2Assembled: acceleration must be positive");
  return g2FromParts(coefficientAtE, det, kTwoPi / a);
}

double g2AssembledThermal(const std::function<double(double)>& coefficientAtE,
                          const DetectorModel& det, double beta) {
  if (!(beta > 0.0)) throw DomainError("g2AssembledThermal: beta must be positive");
  return g2FromParts(coefficientAtE, det, beta);
}

double g2TwoLevelNear(double dtau, const DetectorModel& det) {
  const auto* two = std::get_if<TwoLevel>(&det.alpha);
  if (!two) throw DomainError("g2TwoLevelNear: detector must carry a two-level profile");
  return 1.0 - kTwoPi / two->deltaE * fSigma(dtau, det.sigma);
}

CoherenceCurve g2CurveTwoLevelNear(const std::vector<double>& dtauGrid,
                                   const DetectorModel& det) {
  CoherenceCurve curve;
  curve.dtau = dtauGrid;
  curve.g2.reserve(dtauGrid.size());
  for (double dt : dtauGrid) curve.g2.push_back(g2TwoLevelNear(dt, det));
  curve.r = 0.0;
  curve.method = "two-level-near";
  return curve;
}

double oddSineIntegral(double E, double a) {
  if (!(a > 0.0)) throw DomainError("oddSineIntegral: acceleration must be positive");
  return kPi / a * std::tanh(kPi * E / (2.0 * a));
}

double evenBracketIntegral(double E, double a) {
  if (!(a > 0.0)) throw DomainError("evenBracketIntegral: acceleration must be positive");
  if (E == 0.0) throw DomainError("evenBracketIntegral: E = 0 is singular");
  return -kPi * E * E / (2.0 * a * a) / std::tanh(kPi * E / (2.0 * a));
}

double feynmanPairSuppression(double E, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("feynmanPairSuppression: sigma must be positive");
  const double eTil = 2.0 * E;
  return std::sqrt(4.0 * kPi * sigma * sigma) * std::exp(-sigma * sigma * eTil * eTil);
}

}  // namespace udw
