//! Single-detector response: the Planck law and its finite-resolution
//! correction, the detector-model guards, the truncated single-axis closed
//! forms, and the adiabatic limit of profile-driven motion.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "udw/errors.hpp"
#include "udw/response.hpp"
#include "udw/worldlines.hpp"

using namespace udw;

namespace {

/// Unit absorption on [lo, hi]; keeps response values equal to p / alpha.
DetectorModel unitDetector(double sigma, double lo = 0.25, double hi = 4.0) {
  return makeDetector(sigma, CallableAlpha{[](double) { return 1.0; }, lo, hi});
}

}  // namespace

TEST_CASE("planck response carries the frozen closed values") {
  const DetectorModel det = unitDetector(50.0);
  const struct {
    double e;
    double p;
  } frozen[] = {
      {0.5, 3.5941726334312286e-3},
      {1.0, 2.9776880788837904e-4},
      {2.0, 1.1100594196460298e-6},
      {3.0, 3.1094477689763008e-9},
  };
  for (const auto& f : frozen)
    CHECK(planckResponse(f.e, 1.0, det) == doctest::Approx(f.p).epsilon(1e-12));
  CHECK_THROWS_AS(planckResponse(1.0, 0.0, det), DomainError);
  CHECK_THROWS_AS(planckResponse(1.0, -1.0, det), DomainError);
}

TEST_CASE("uniformly accelerated quadrature matches the corrected Planck law") {
  const DetectorModel det = unitDetector(50.0);
  const QuadratureSpec spec{};
  for (double e : {0.5, 1.0, 2.0}) {
    const double quad = responseGeneral(Worldline{UniformAcceleration{1.0, {}}}, e, 0.0, det,
                                        spec);
    CHECK(quad == doctest::Approx(planckWithCorrection(e, 1.0, det)).epsilon(1e-4));
    CHECK(quad == doctest::Approx(planckResponse(e, 1.0, det)).epsilon(1e-2));
  }
  // Stationary state: the detection time is irrelevant.
  const double p0 = responseGeneral(Worldline{UniformAcceleration{1.0, {}}}, 1.0, 0.0, det,
                                    spec);
  const double p5 = responseGeneral(Worldline{UniformAcceleration{1.0, {}}}, 1.0, 5.0, det,
                                    spec);
  CHECK(p0 == doctest::Approx(p5).epsilon(1e-12));
  CHECK_THROWS_AS(
      responseGeneral(Worldline{UniformAcceleration{-1.0, {}}}, 1.0, 0.0, det, spec),
      DomainError);
}

TEST_CASE("the corrected Planck law refuses sigma a below the series regime") {
  const DetectorModel det = unitDetector(2.0);
  CHECK_THROWS_AS(planckWithCorrection(1.0, 1.0, det), RegimeError);
}

TEST_CASE("a static detector at resolved energy gap detects nothing") {
  const DetectorModel det = unitDetector(4.0);
  const double p =
      responseGeneral(Worldline{StaticWorldline{}}, 1.0, 0.0, det, QuadratureSpec{});
  CHECK(std::abs(p) <= 1e-10);
}

TEST_CASE("slowly varying profiles reduce to the instantaneous Planck response") {
  const auto profile = [](double t) { return 0.5 * (1.0 + std::tanh(t / 250.0)); };
  const VariableAcceleration va(profile, -1000.0, 1500.0);
  const DetectorModel det = unitDetector(25.0);
  QuadratureSpec spec{};
  spec.absTol = 1e-12;  // the osculating correction is tiny here

  const double adiabatic = adiabaticResponse(va, 1.0, 250.0, det);
  CHECK(adiabatic == doctest::Approx(planckResponse(1.0, va.aAt(250.0), det)).epsilon(1e-14));
  const double quad = responseGeneral(Worldline{va}, 1.0, 250.0, det, spec);
  CHECK(quad == doctest::Approx(adiabatic).epsilon(0.02));

  // Fast drift relative to the window is refused.
  CHECK_THROWS_AS(adiabaticResponse(va, 1.0, -250.0, det), RegimeError);
  // So is an unresolved acceleration scale, however slow the drift.
  const VariableAcceleration slowTiny([](double) { return 0.05; }, 0.0, 100.0);
  CHECK_THROWS_AS(adiabaticResponse(slowTiny, 1.0, 50.0, det), RegimeError);
}

TEST_CASE("detector model guards reject unusable configurations") {
  CHECK_THROWS_AS(makeDetector(0.0, TwoLevel{1.0, 0.05}), DomainError);
  CHECK_THROWS_AS(makeDetector(200.0, TwoLevel{1.0, 0.05}, 0.0), DomainError);
  CHECK_THROWS_AS(makeDetector(100.0, TwoLevel{1.0, 0.05}), RegimeError);   // band unresolved
  CHECK_THROWS_AS(makeDetector(2000.0, TwoLevel{0.2, 0.05}), RegimeError);  // band not narrow
  CHECK_THROWS_AS(makeDetector(1.0, TabulatedAlpha{{1.0, 0.5}, {1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(makeDetector(1.0, TabulatedAlpha{{1.0, 2.0}, {1.0, -0.1}}), DomainError);
  CHECK_THROWS_AS(makeDetector(1.0, CallableAlpha{nullptr, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(makeDetector(1.0, CallableAlpha{[](double) { return 1.0; }, 1.0, 1.0}),
                  DomainError);

  const DetectorModel ok = makeDetector(200.0, TwoLevel{1.0, 0.05});
  CHECK(alphaAt(ok, 1.0) == doctest::Approx(400.0).epsilon(1e-14));
  CHECK(alphaAt(ok, 1.03) == 0.0);
  const auto [lo, hi] = alphaSupport(ok);
  CHECK(lo == doctest::Approx(0.975).epsilon(1e-14));
  CHECK(hi == doctest::Approx(1.025).epsilon(1e-14));

  const DetectorModel tab =
      makeDetector(1.0, TabulatedAlpha{{1.0, 2.0, 4.0}, {0.0, 2.0, 2.0}});
  CHECK(alphaAt(tab, 1.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(alphaAt(tab, 3.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(alphaAt(tab, 0.5) == 0.0);
  CHECK(alphaAt(tab, 5.0) == 0.0);
}

TEST_CASE("spectrum helpers: non-negativity floor and trapezoid intensity") {
  Spectrum s;
  s.energies = {1.0, 2.0, 3.0};
  s.values = {1.0, 1.0, 1.0};
  CHECK(intensity(s) == doctest::Approx(4.0).epsilon(1e-14));

  s.values = {1.0, -1e-12, 1.0};
  CHECK_NOTHROW(checkSpectrumNonnegative(s, 1e-8));
  s.values = {1.0, -1e-3, 1.0};
  CHECK_THROWS_AS(checkSpectrumNonnegative(s, 1e-8), DomainError);

  Spectrum tooShort;
  tooShort.energies = {1.0};
  tooShort.values = {1.0};
  CHECK_THROWS_AS(intensity(tooShort), DomainError);
}

TEST_CASE("truncated single-axis closed forms cover every pole pattern") {
  const QuadratureSpec spec{};
  const double e = 1.1;

  const NullDerivatives twoPoles{1.3, 0.9, 0.8, 2.1};
  CHECK(classifyTruncatedPoles(twoPoles) == TruncatedPoleCase::TwoPoles);
  const double closed2 = singleAxisClosedForm(twoPoles, e, 1.0);
  CHECK(closed2 == doctest::Approx(1.2278757044201266e-3).epsilon(1e-10));
  CHECK(singleAxisTruncatedQuadrature(twoPoles, e, 1.0, spec) ==
        doctest::Approx(closed2).epsilon(1e-6));

  const NullDerivatives merged{1.0, 1.0, 1.0, 1.0};
  CHECK(classifyTruncatedPoles(merged) == TruncatedPoleCase::Merged);
  const double closedM = singleAxisClosedForm(merged, e, 1.0);
  CHECK(closedM == doctest::Approx(3.11170655933994e-4).epsilon(1e-10));
  CHECK(singleAxisTruncatedQuadrature(merged, e, 1.0, spec) ==
        doctest::Approx(closedM).epsilon(1e-6));

  const NullDerivatives onePole{1.3, 0.9, 0.8, -2.1};
  CHECK(classifyTruncatedPoles(onePole) == TruncatedPoleCase::SinglePole);
  const double closed1 = singleAxisClosedForm(onePole, e, 1.0);
  CHECK(closed1 > 0.0);
  CHECK(singleAxisTruncatedQuadrature(onePole, e, 1.0, spec) ==
        doctest::Approx(closed1).epsilon(1e-6));

  const NullDerivatives vanishing{1.3, -0.9, 0.8, -2.1};
  CHECK(classifyTruncatedPoles(vanishing) == TruncatedPoleCase::Vanishing);
  CHECK(singleAxisClosedForm(vanishing, e, 1.0) == 0.0);
  CHECK(std::abs(singleAxisTruncatedQuadrature(vanishing, e, 1.0, spec)) <=
        1e-6 * closed2);
}

TEST_CASE("truncated response of a hyperbola reduces to the merged closed form") {
  const DetectorModel det = unitDetector(50.0);
  // At tau = 0 a unit hyperbola has du1 = dv1 = 1 and du3 = dv3 = 1.
  const NullDerivatives nd = nullDerivatives(Worldline{UniformAcceleration{1.0, {}}}, 0.0);
  CHECK(nd.du1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(nd.du3 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(nd.dv1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(nd.dv3 == doctest::Approx(1.0).epsilon(1e-6));
  const double viaResponse =
      singleAxisResponse(Worldline{UniformAcceleration{1.0, {}}}, 1.1, 0.0, det);
  CHECK(viaResponse ==
        doctest::Approx(singleAxisClosedForm(nd, 1.1, 1.0)).epsilon(1e-9));
  CHECK_THROWS_AS(
      singleAxisResponse(Worldline{UniformAcceleration{1.0, {}}}, 1.1, 0.0, det, 2),
      DomainError);
}
