#include "udw/propagators.hpp"

#include <cmath>

#include "udw/errors.hpp"

namespace udw {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kFourPiSq = 4.0 * kPi * kPi;
constexpr double kSixteenPiSq = 16.0 * kPi * kPi;

/// sinh(x)/x, stable at small x.
double sinhc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

}  // namespace

double defaultEpsilon(double sigma, double a, double epsScale) {
  if (!(sigma > 0.0)) throw DomainError("defaultEpsilon: sigma must be positive");
  if (!(epsScale > 0.0)) throw DomainError("defaultEpsilon: epsScale must be positive");
  double scale = sigma;
  if (a > 0.0) scale = std::min(scale, 1.0 / a);
  return 1e-4 * scale * epsScale;
}

std::complex<double> vacuumWightman(const Event& e1, const Event& e2, double eps) {
  const double d0 = e1.x0 - e2.x0;
  const double d1 = e1.x1 - e2.x1;
  const double d2 = e1.x2 - e2.x2;
  const double d3 = e1.x3 - e2.x3;
  const std::complex<double> dt{d0, -eps};
  const std::complex<double> denom = dt * dt - (d1 * d1 + d2 * d2 + d3 * d3);
  return -1.0 / (kFourPiSq * denom);
}

std::complex<double> feynmanPropagator(const Event& e1, const Event& e2, double eps) {
  const std::complex<double> denom{intervalSquared(e1, e2), -eps};
  return -1.0 / (kFourPiSq * denom);
}

std::complex<double> acceleratedPairKernel(std::complex<double> dtau, double a, double r) {
  if (!(a > 0.0)) throw DomainError("acceleratedPairKernel: acceleration must be positive");
  if (r < 0.0) throw DomainError("acceleratedPairKernel: light delay must be non-negative");
  const std::complex<double> z1 = 0.5 * a * (dtau - r);
  const std::complex<double> z2 = 0.5 * a * (dtau + r);
  // |sinh z1 sinh z2| grows like e^{|Re z1| + |Re z2|}; past ~700 the kernel
  // underflows (and naive complex division would produce inf/inf), so the
  // exact limit 0 is returned.
  if (std::abs(z1.real()) + std::abs(z2.real()) > 700.0) return {0.0, 0.0};
  return -a * a / (kSixteenPiSq * std::sinh(z1) * std::sinh(z2));
}

std::complex<double> acceleratedPairWightman(double dtau, double a, double r, double eps) {
  return acceleratedPairKernel({dtau, -eps}, a, r);
}

std::complex<double> thermalKernel(std::complex<double> dt, double beta, double d) {
  if (!(beta > 0.0)) throw DomainError("thermalKernel: beta must be positive");
  if (d < 0.0) throw DomainError("thermalKernel: separation must be non-negative");
  if (d < 1e-6 * beta) {
    const std::complex<double> z = kPi * dt / beta;
    if (std::abs(z.real()) > 350.0) return {0.0, 0.0};
    const std::complex<double> s = std::sinh(z);
    return -1.0 / (4.0 * beta * beta * s * s);
  }
  const std::complex<double> z1 = kPi * (dt - d) / beta;
  const std::complex<double> z2 = kPi * (dt + d) / beta;
  if (std::abs(z1.real()) + std::abs(z2.real()) > 700.0) return {0.0, 0.0};
  return -std::sinh(2.0 * kPi * d / beta) /
         (8.0 * kPi * beta * d * std::sinh(z1) * std::sinh(z2));
}

std::complex<double> thermalWightman(double dt, double beta, double d, double eps) {
  return thermalKernel({dt, -eps}, beta, d);
}

double thermalEnhancement(double r, double beta) {
  if (!(beta > 0.0)) throw DomainError("thermalEnhancement: beta must be positive");
  if (r < 0.0) throw DomainError("thermalEnhancement: separation must be non-negative");
  return sinhc(2.0 * kPi * r / beta);
}

}  // namespace udw
