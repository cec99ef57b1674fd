#include "udw/response.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "udw/errors.hpp"
#include "udw/propagators.hpp"
#include "udw/smearing.hpp"

namespace udw {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;
const std::complex<double> kI{0.0, 1.0};

/// sinh(x)/x, stable at small x.
double sinhc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

/// Gaussian overlap window at complex argument: exp(-z^2 / (8 sigma^2)).
std::complex<double> gSigmaC(std::complex<double> z, double sigma) {
  return std::exp(-z * z / (8.0 * sigma * sigma));
}

/// Contour depth for the stationary kernels: well below the real axis (so the
/// pole lobes are resolvable) yet clear of the first subdominant pole row at
/// Im = -2 pi / a and of runaway growth of the Gaussian window. The kernels
/// are analytic in the strip, so the value is exactly depth-independent; the
/// regulator-scale knobs still shift the depth (capped for analyticity) so
/// that regulator-robustness checks exercise a genuinely different contour.
double stationaryDepth(double a, double sigma, double epsScale) {
  double depth = 1.2 * sigma;
  if (a > 0.0) depth = std::min(depth, 1.4 / a);
  return depth * std::min(epsScale, 2.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Detector model

DetectorModel makeDetector(double sigma, AlphaModel alpha, double epsScale) {
  if (!(sigma > 0.0)) throw DomainError("makeDetector: sigma must be positive");
  if (!(epsScale > 0.0)) throw DomainError("makeDetector: epsScale must be positive");
  if (const auto* two = std::get_if<TwoLevel>(&alpha)) {
    if (!(two->E0 > 0.0) || !(two->deltaE > 0.0))
      throw DomainError("makeDetector: two-level E0 and deltaE must be positive");
    if (two->deltaE * sigma < 10.0)
      throw RegimeError(
          "makeDetector: two-level band is unresolved; require deltaE * sigma >= 10");
    if (two->E0 / two->deltaE < 10.0)
      throw RegimeError(
          "makeDetector: two-level band is not narrow; require E0 / deltaE >= 10");
  } else if (const auto* tab = std::get_if<TabulatedAlpha>(&alpha)) {
    if (tab->energy.size() < 2 || tab->energy.size() != tab->value.size())
      throw DomainError("makeDetector: tabulated profile needs matching grids, >= 2 points");
    for (std::size_t i = 1; i < tab->energy.size(); ++i)
      if (!(tab->energy[i] > tab->energy[i - 1]))
        throw DomainError("makeDetector: tabulated energy grid must be strictly increasing");
    for (double v : tab->value)
      if (v < 0.0) throw DomainError("makeDetector: absorption profile must be non-negative");
  } else if (const auto* fn = std::get_if<CallableAlpha>(&alpha)) {
    if (!fn->fn) throw DomainError("makeDetector: null absorption callable");
    if (!(fn->supportMax > fn->supportMin))
      throw DomainError("makeDetector: callable profile needs a non-empty support interval");
  }
  return DetectorModel{sigma, std::move(alpha), epsScale};
}

double alphaAt(const DetectorModel& det, double E) {
  if (const auto* two = std::get_if<TwoLevel>(&det.alpha)) {
    const double half = 0.5 * two->deltaE;
    return std::abs(E - two->E0) <= half ? 1.0 / (two->deltaE * two->deltaE) : 0.0;
  }
  if (const auto* tab = std::get_if<TabulatedAlpha>(&det.alpha)) {
    const auto& x = tab->energy;
    if (E < x.front() || E > x.back()) return 0.0;
    const auto it = std::upper_bound(x.begin(), x.end(), E);
    const std::size_t hi = std::min<std::size_t>(it - x.begin(), x.size() - 1);
    const std::size_t lo = hi - 1;
    const double t = (E - x[lo]) / (x[hi] - x[lo]);
    return (1.0 - t) * tab->value[lo] + t * tab->value[hi];
  }
  const auto& fn = std::get<CallableAlpha>(det.alpha);
  if (E < fn.supportMin || E > fn.supportMax) return 0.0;
  return fn.fn(E);
}

std::pair<double, double> alphaSupport(const DetectorModel& det) {
  if (const auto* two = std::get_if<TwoLevel>(&det.alpha))
    return {two->E0 - 0.5 * two->deltaE, two->E0 + 0.5 * two->deltaE};
  if (const auto* tab = std::get_if<TabulatedAlpha>(&det.alpha))
    return {tab->energy.front(), tab->energy.back()};
  const auto& fn = std::get<CallableAlpha>(det.alpha);
  return {fn.supportMin, fn.supportMax};
}

void checkSpectrumNonnegative(const Spectrum& s, double relTol) {
  double peak = 0.0;
  for (double v : s.values) peak = std::max(peak, v);
  const double floor = -10.0 * relTol * peak;
  for (std::size_t i = 0; i < s.values.size(); ++i)
    if (s.values[i] < floor)
      throw DomainError("spectrum has a negative excursion beyond the quadrature floor at E=" +
                        std::to_string(s.energies[i]));
}

double intensity(const Spectrum& s) {
  if (s.energies.size() != s.values.size() || s.energies.size() < 2)
    throw DomainError("intensity: need a spectrum on a grid of >= 2 energies");
  double acc = 0.0;
  for (std::size_t i = 1; i < s.energies.size(); ++i) {
    const double h = s.energies[i] - s.energies[i - 1];
    acc += 0.5 * h * (s.energies[i] * s.values[i] + s.energies[i - 1] * s.values[i - 1]);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Closed thermal forms

double planckResponse(double E, double a, const DetectorModel& det) {
  if (!(a > 0.0)) throw DomainError("planckResponse: acceleration must be positive");
  const double z = kTwoPi * E / a;
  double phi;  // E / (e^{2 pi E / a} - 1)
  if (std::abs(z) < 1e-8)
    phi = a / kTwoPi * (1.0 - 0.5 * z);
  else
    phi = E / std::expm1(z);
  return alphaAt(det, E) * phi / kTwoPi;
}

double planckWithCorrection(double E, double a, const DetectorModel& det) {
  if (!(det.sigma * a >= 3.0))
    throw RegimeError("planckWithCorrection: requires sigma * a >= 3");
  return planckResponse(E, a, det) * (1.0 + etaSeriesTerm(E, a, det.sigma));
}

double adiabaticResponse(const VariableAcceleration& w, double E, double tau,
                         const DetectorModel& det) {
  const double a = std::abs(w.aAt(tau));
  if (!(a * det.sigma > 3.0))
    throw RegimeError("adiabaticResponse: requires a(tau) * sigma > 3");
  const double drift = std::abs(w.aDotAt(tau)) * det.sigma / a;
  if (!(drift < 0.1))
    throw RegimeError("adiabaticResponse: profile drifts too fast; require |da/dtau| sigma / a < 0.1");
  return planckResponse(E, a, det);
}

// ---------------------------------------------------------------------------
// Quadrature responses

namespace {

/// Stationary-kernel response: integrate gSigma(y) e^{-iEy} K(y) along the
/// pole-free line Im y = -depth. K must be analytic in the strip and the
/// combined integrand must die off inside the Gaussian window.
ResponseResult stationaryResponse(
    double E, const DetectorModel& det, const QuadratureSpec& spec, double depth,
    const std::function<std::complex<double>(std::complex<double>)>& kernel) {
  const double sigma = det.sigma;
  const auto f = [&](double t) {
    const std::complex<double> z{t, -depth};
    return gSigmaC(z, sigma) * std::exp(-kI * E * z) * kernel(z);
  };
  const IntegralResult res = integrateWindowed(f, spec, 0.0, 2.0 * sigma);
  return {res.value.real(), res.errorEstimate, res.panels};
}

/// Subtraction response for the profile-driven families: split the pullback
/// into an osculating uniformly-accelerated reference (integrated on a deep
/// contour, where it is analytic) plus a regular difference (integrated on
/// the real axis with the per-factor regulator in the instantaneous rest
/// frame). ju/jv are the local-frame null increments of the worldline.
ResponseResult subtractionResponse(
    double E, double a0, const DetectorModel& det, const QuadratureSpec& spec,
    const std::function<void(double y, double& ju, double& jv)>& increments) {
  const double sigma = det.sigma;
  const double eps = defaultEpsilon(sigma, a0, det.epsScale * spec.epsScale);
  const double deadband = 50.0 * eps;

  const auto refIncrement = [&](double y) {
    return a0 > 0.0 ? y * sinhc(0.5 * a0 * y) : y;
  };

  const double depth = stationaryDepth(a0, sigma, det.epsScale * spec.epsScale);
  const auto refKernel = [&](std::complex<double> z) -> std::complex<double> {
    if (a0 > 0.0) return acceleratedPairKernel(z, a0, 0.0);
    return -1.0 / (kFourPiSq * z * z);
  };
  const ResponseResult refRes = stationaryResponse(E, det, spec, depth, refKernel);

  const auto diff = [&](double y) -> std::complex<double> {
    if (std::abs(y) < deadband) return {0.0, 0.0};
    double ju = 0.0, jv = 0.0;
    increments(y, ju, jv);
    const std::complex<double> dPath = (ju - kI * eps) * (jv - kI * eps);
    const double jr = refIncrement(y);
    const std::complex<double> dRef = (jr - kI * eps) * (jr - kI * eps);
    const std::complex<double> kDiff = (-1.0 / kFourPiSq) * (1.0 / dPath - 1.0 / dRef);
    return gSigma(y, sigma) * std::exp(-kI * E * y) * kDiff;
  };
  // The difference is a correction to the reference term, so its doubling may
  // stop once further refinement is below relTol of that reference: a path
  // that osculates the reference everywhere yields a difference that is pure
  // evaluation noise, which no panel count reduces.
  QuadratureSpec diffSpec = spec;
  diffSpec.absTol = std::max(spec.absTol, spec.relTol * std::abs(refRes.value));
  // Integrate each side of the deadband separately so its edges are panel
  // boundaries; a step inside a panel would stall the doubling at first order.
  const double wide = spec.windowSigmas * 2.0 * sigma;
  std::complex<double> diffValue{};
  double diffError = 0.0;
  int diffPanels = 0;
  if (deadband < wide) {
    for (const auto& [lo, hi] :
         {std::pair{deadband, wide}, std::pair{-wide, -deadband}}) {
      const IntegralResult res = integrateInterval(diff, diffSpec, lo, hi);
      diffValue += res.value;
      diffError += res.errorEstimate;
      diffPanels = std::max(diffPanels, res.panels);
    }
  }

  return {diffValue.real() + refRes.value, diffError + refRes.error,
          std::max(diffPanels, refRes.panels)};
}

}  // namespace

ResponseResult responseGeneralDetailed(const Worldline& w, double E, double tau,
                                       const DetectorModel& det, const QuadratureSpec& spec) {
  const double alpha = alphaAt(det, E);
  if (alpha == 0.0) return {0.0, 0.0, 0};

  ResponseResult raw{};
  if (const auto* ua = std::get_if<UniformAcceleration>(&w)) {
    const double a = ua->a;
    if (!(a > 0.0)) throw DomainError("responseGeneral: uniform acceleration must be positive");
    raw = stationaryResponse(E, det, spec,
                             stationaryDepth(a, det.sigma, det.epsScale * spec.epsScale),
                             [&](std::complex<double> z) {
                               return acceleratedPairKernel(z, a, 0.0);
                             });
  } else if (std::holds_alternative<StaticWorldline>(w)) {
    raw = stationaryResponse(E, det, spec,
                             0.5 * det.sigma * std::min(det.epsScale * spec.epsScale, 2.0),
                             [&](std::complex<double> z) {
                               return -1.0 / (kFourPiSq * z * z);
                             });
  } else if (const auto* va = std::get_if<VariableAcceleration>(&w)) {
    const double a0 = std::abs(va->aAt(tau));
    // One anchored-prefix table covers every quadrature event in the window;
    // per-event queries are then a couple of partial-segment panels.
    const auto table = va->incrementTable(tau, spec.windowSigmas * det.sigma);
    raw = subtractionResponse(E, a0, det, spec, [&](double y, double& ju, double& jv) {
      const auto inc = table.at(y);
      ju = inc.ju;
      jv = inc.jv;
    });
  } else {
    const auto& sx = std::get<SingleAxisNull>(w);
    const auto d1 = derivative(w, tau, 1);
    const double du1 = d1[0] + d1[1];
    const double dv1 = d1[0] - d1[1];
    if (std::abs(du1 * dv1 - 1.0) > 1e-6)
      throw DomainError(
          "responseGeneral: single-axis worldline is not proper-time normalized (du/dtau * "
          "dv/dtau must equal 1)");
    const double a0 = properAcceleration(w, tau);
    raw = subtractionResponse(E, a0, det, spec, [&](double y, double& ju, double& jv) {
      ju = (sx.u(tau + 0.5 * y) - sx.u(tau - 0.5 * y)) / du1;
      jv = (sx.v(tau + 0.5 * y) - sx.v(tau - 0.5 * y)) / dv1;
    });
  }
  return {alpha * raw.value, alpha * raw.error, raw.panels};
}

double responseGeneral(const Worldline& w, double E, double tau, const DetectorModel& det,
                       const QuadratureSpec& spec) {
  return responseGeneralDetailed(w, E, tau, det, spec).value;
}

ResponseResult thermalStaticResponse(double E, double beta, const DetectorModel& det,
                                     const QuadratureSpec& spec) {
  if (!(beta > 0.0)) throw DomainError("thermalStaticResponse: beta must be positive");
  const double alpha = alphaAt(det, E);
  if (alpha == 0.0) return {0.0, 0.0, 0};
  const double depth = std::min(0.25 * beta, 1.2 * det.sigma) *
                       std::min(det.epsScale * spec.epsScale, 2.0);
  ResponseResult raw = stationaryResponse(E, det, spec, depth, [&](std::complex<double> z) {
    return thermalKernel(z, beta, 0.0);
  });
  return {alpha * raw.value, alpha * raw.error, raw.panels};
}

// ---------------------------------------------------------------------------
// Truncated null-coordinate expansion

NullDerivatives nullDerivatives(const Worldline& w, double tau) {
  const auto d1 = derivative(w, tau, 1);
  const auto d3 = derivative(w, tau, 3);
  NullDerivatives nd;
  nd.du1 = d1[0] + d1[1];
  nd.dv1 = d1[0] - d1[1];
  nd.du3 = d3[0] + d3[1];
  nd.dv3 = d3[0] - d3[1];
  return nd;
}

TruncatedPoleCase classifyTruncatedPoles(const NullDerivatives& nd) {
  if (!(nd.du1 > 0.0) || !(nd.dv1 > 0.0))
    throw DomainError("classifyTruncatedPoles: worldline must be future-directed timelike");
  const bool uPole = nd.du3 / nd.du1 > 0.0;
  const bool vPole = nd.dv3 / nd.dv1 > 0.0;
  if (uPole && vPole) {
    const double bu = std::sqrt(24.0 * nd.du1 / nd.du3);
    const double bv = std::sqrt(24.0 * nd.dv1 / nd.dv3);
    if (std::abs(bu - bv) <= 1e-6 * (bu + bv)) return TruncatedPoleCase::Merged;
    return TruncatedPoleCase::TwoPoles;
  }
  if (uPole || vPole) return TruncatedPoleCase::SinglePole;
  return TruncatedPoleCase::Vanishing;
}

double singleAxisClosedForm(const NullDerivatives& nd, double E, double alphaE) {
  if (!(E > 0.0)) throw DomainError("singleAxisClosedForm: energy must be positive");
  const TruncatedPoleCase kind = classifyTruncatedPoles(nd);
  if (kind == TruncatedPoleCase::Vanishing) return 0.0;

  const double dets = nd.du1 * nd.dv3 - nd.dv1 * nd.du3;
  if (kind == TruncatedPoleCase::Merged) {
    const double b = std::sqrt(24.0 * nd.du1 / nd.du3);
    const double b4 = b * b * b * b;
    return 72.0 * alphaE * (E + 3.0 / b) * std::exp(-E * b) / (kPi * nd.du3 * nd.dv3 * b4);
  }

  double bracket = 0.0;
  if (nd.dv3 / nd.dv1 > 0.0) {
    const double bv = std::sqrt(24.0 * nd.dv1 / nd.dv3);
    bracket += std::sqrt(nd.dv3 * nd.dv3 * nd.dv3 / (24.0 * nd.dv1 * nd.dv1 * nd.dv1)) *
               std::exp(-E * bv);
  }
  if (nd.du3 / nd.du1 > 0.0) {
    const double bu = std::sqrt(24.0 * nd.du1 / nd.du3);
    bracket -= std::sqrt(nd.du3 * nd.du3 * nd.du3 / (24.0 * nd.du1 * nd.du1 * nd.du1)) *
               std::exp(-E * bu);
  }
  return alphaE / (4.0 * kPi) * bracket / dets;
}

double singleAxisTruncatedQuadrature(const NullDerivatives& nd, double E, double alphaE,
                                     const QuadratureSpec& spec) {
  if (!(E > 0.0)) throw DomainError("singleAxisTruncatedQuadrature: energy must be positive");
  classifyTruncatedPoles(nd);  // validates future-directedness

  // Pole scales of the truncated cubics: imaginary pairs at +-i b (kept below
  // the contour), real pairs at +-R (kept above it).
  double bMin = std::numeric_limits<double>::infinity();
  double rMax = 0.0;
  for (const auto& [d1, d3] : {std::pair{nd.du1, nd.du3}, std::pair{nd.dv1, nd.dv3}}) {
    if (d3 == 0.0) continue;
    const double scale = std::sqrt(std::abs(24.0 * d1 / d3));
    if (d1 / d3 > 0.0)
      bMin = std::min(bMin, scale);
    else
      rMax = std::max(rMax, scale);
  }
  const double depth =
      std::isfinite(bMin) ? 0.35 * std::min(bMin, 2.0 / E) : 0.5 / E;
  const double halfWidth =
      std::max({200.0 / E, 20.0 * rMax, std::isfinite(bMin) ? 20.0 * bMin : 0.0});

  const auto f = [&](double t) -> std::complex<double> {
    const std::complex<double> y{t, -depth};
    const std::complex<double> pu = nd.du1 * y + nd.du3 * y * y * y / 24.0;
    const std::complex<double> pv = nd.dv1 * y + nd.dv3 * y * y * y / 24.0;
    return std::exp(-kI * E * y) / (pu * pv);
  };
  QuadratureSpec local = spec;
  local.panels = std::max(spec.panels, 4096);
  local.relTol = std::min(spec.relTol, 1e-9);
  const IntegralResult res =
      integrateWindowed(f, local, 0.0, halfWidth / local.windowSigmas);
  return -alphaE / kFourPiSq * res.value.real();
}

double singleAxisResponse(const Worldline& w, double E, double tau, const DetectorModel& det,
                          int truncationOrder) {
  if (truncationOrder != 1)
    throw DomainError(
        "singleAxisResponse: only the cubic truncation (truncationOrder == 1) is supported");
  return singleAxisClosedForm(nullDerivatives(w, tau), E, alphaAt(det, E));
}

}  // namespace udw
