//! Gaussian smearing windows: normalization and the exact factorization of
//! two-window amplitude products into mean-time and difference factors.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "udw/quadrature.hpp"
#include "udw/smearing.hpp"

using namespace udw;

TEST_CASE("fSigma is a normalized Gaussian, gSigma its unit-peak overlap") {
  const double kTwoPi = 6.283185307179586476925286766559;
  for (double sigma : {0.3, 1.0, 25.0}) {
    CHECK(fSigma(0.0, sigma) == doctest::Approx(1.0 / std::sqrt(kTwoPi * sigma * sigma))
                                    .epsilon(1e-14));
    CHECK(fSigma(1.3 * sigma, sigma) == fSigma(-1.3 * sigma, sigma));
    CHECK(gSigma(0.0, sigma) == 1.0);
    // gSigma has standard deviation 2 sigma.
    CHECK(gSigma(2.0 * sigma, sigma) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));

    const QuadratureSpec spec{};
    const auto f = [&](double s) { return std::complex<double>{fSigma(s, sigma), 0.0}; };
    const double mass = integrateWindowed(f, spec, 0.0, sigma).value.real();
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("two-window products factorize exactly for deterministic samples") {
  std::mt19937 rng(20260823);
  for (double sigma : {0.5, 1.0, 25.0}) {
    std::uniform_real_distribution<double> dist(-2.0 * sigma, 2.0 * sigma);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = dist(rng), s = dist(rng), sPrime = dist(rng);
      const double res = factorizationResidual(t, s, sPrime, sigma);
      worst = std::max(worst, std::abs(res));
    }
    // The residual is an exact algebraic zero; only rounding survives.
    CHECK(worst <= 1e-13 * fSigma(0.0, sigma));
  }
}
