//! Two-point functions: Hermiticity, thermal periodicity in imaginary time,
//! the uniform-acceleration/thermal kernel identity, and agreement between
//! the event-based vacuum function and its worldline pullbacks.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "udw/events.hpp"
#include "udw/propagators.hpp"
#include "udw/worldlines.hpp"

using namespace udw;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

bool closeRel(std::complex<double> a, std::complex<double> b, double tol) {
  return std::abs(a - b) <= tol * (std::abs(a) + std::abs(b) + 1e-300);
}

}  // namespace

TEST_CASE("vacuum two-point function is Hermitian under argument exchange") {
  const Event e1{0.3, 1.0, -0.5, 0.2};
  const Event e2{1.1, 0.4, 0.0, -0.7};
  for (double eps : {1e-3, 1e-6}) {
    const auto w12 = vacuumWightman(e1, e2, eps);
    const auto w21 = vacuumWightman(e2, e1, eps);
    CHECK(closeRel(w12, std::conj(w21), 1e-14));
  }
}

TEST_CASE("thermal kernel is periodic in imaginary time with period beta") {
  const double beta = 2.0;
  const std::complex<double> shift{0.0, -beta};
  for (double d : {0.0, 0.7})
    for (std::complex<double> w : {std::complex<double>{0.4, -0.1},
                                   std::complex<double>{-1.3, -0.25},
                                   std::complex<double>{2.0, -0.6}}) {
      CHECK(closeRel(thermalKernel(w + shift, beta, d), thermalKernel(w, beta, d), 1e-12));
    }
}

TEST_CASE("accelerated pair kernel is the thermal kernel at beta = 2 pi / a") {
  const double a = 1.3;
  const double beta = 2.0 * kPi / a;
  for (std::complex<double> w : {std::complex<double>{0.5, -0.2},
                                 std::complex<double>{-2.0, -0.8},
                                 std::complex<double>{4.0, -0.05}}) {
    CHECK(closeRel(thermalKernel(w, beta, 0.0), acceleratedPairKernel(w, a, 0.0), 1e-12));
  }
}

TEST_CASE("wightman boundary values satisfy W(-t) = conj W(t)") {
  for (double dtau : {0.3, 1.7}) {
    const auto wp = acceleratedPairWightman(dtau, 1.2, 0.6, 1e-4);
    const auto wm = acceleratedPairWightman(-dtau, 1.2, 0.6, 1e-4);
    CHECK(closeRel(wm, std::conj(wp), 1e-13));
    const auto tp = thermalWightman(dtau, 3.0, 0.4, 1e-4);
    const auto tm = thermalWightman(-dtau, 3.0, 0.4, 1e-4);
    CHECK(closeRel(tm, std::conj(tp), 1e-13));
  }
}

TEST_CASE("vacuum function pulled back to a hyperbola matches the pair kernel") {
  const double a = 2.0;
  const Worldline ua{UniformAcceleration{a, {0.0, 0.0, 0.0, 0.0}}};
  for (double dtau : {0.5, 1.0, 2.5}) {
    const Event e1 = position(ua, 0.5 * dtau);
    const Event e2 = position(ua, -0.5 * dtau);
    const auto viaEvents = vacuumWightman(e1, e2, 1e-10);
    const double closed =
        -a * a / (16.0 * kPi * kPi * std::pow(std::sinh(0.5 * a * dtau), 2));
    CHECK(viaEvents.real() == doctest::Approx(closed).epsilon(1e-6));
    CHECK(std::abs(viaEvents.imag()) <= 1e-4 * std::abs(closed));
  }
}

TEST_CASE("feynman propagator at spacelike separation is real and positive") {
  const Event e1{0.0, 0.0, 0.0, 0.0};
  const Event e2{0.5, 2.0, 0.0, 0.0};  // interval squared = 0.25 - 4 < 0
  const double s2 = intervalSquared(e1, e2);
  const auto f = feynmanPropagator(e1, e2, 1e-10);
  CHECK(f.real() == doctest::Approx(-1.0 / (4.0 * kPi * kPi * s2)).epsilon(1e-8));
  CHECK(f.real() > 0.0);
  CHECK(std::abs(f.imag()) <= 1e-8 * std::abs(f.real()));
}

TEST_CASE("separated thermal kernel approaches the coincident branch as d -> 0") {
  const double beta = 2.0;
  const std::complex<double> w{0.8, -0.3};
  const auto coincident = thermalKernel(w, beta, 0.0);
  const auto nearly = thermalKernel(w, beta, 1e-5 * beta);
  CHECK(closeRel(nearly, coincident, 1e-6));
}

TEST_CASE("thermal enhancement interpolates from 1 to exponential growth") {
  const double beta = 2.0;
  CHECK(thermalEnhancement(0.0, beta) == 1.0);
  for (double r : {0.1, 1.0, 5.0}) {
    const double expected = beta * std::sinh(2.0 * kPi * r / beta) / (2.0 * kPi * r);
    CHECK(thermalEnhancement(r, beta) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("kernels underflow cleanly far along the real axis") {
  CHECK(acceleratedPairKernel({1e6, 0.0}, 1.0, 0.0) == std::complex<double>{0.0, 0.0});
}

TEST_CASE("default pole regulator tracks the shorter of the two scales") {
  CHECK(defaultEpsilon(2.0, 4.0) == doctest::Approx(2.5e-5).epsilon(1e-14));
  CHECK(defaultEpsilon(2.0, 4.0, 3.0) == doctest::Approx(7.5e-5).epsilon(1e-14));
  CHECK(defaultEpsilon(2.0, 0.0) == doctest::Approx(2e-4).epsilon(1e-14));
  CHECK(defaultEpsilon(0.1, 4.0) == doctest::Approx(1e-5).epsilon(1e-14));
}
