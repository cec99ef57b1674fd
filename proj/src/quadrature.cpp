#include "udw/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gl8.hpp"
#include "udw/errors.hpp"

namespace udw {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

/// Compensated accumulator.
struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

struct PassResult {
  std::complex<double> value;
  double l1;
};

PassResult evaluatePass(const std::function<std::complex<double>(double)>& f, double lo,
                        double width, int panels) {
  KahanSum re, im, l1;
  const double pw = width / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * pw;
    for (int i = 0; i < 8; ++i) {
      const double x = mid + 0.5 * pw * detail::kGl8Nodes[i];
      const double w = 0.5 * pw * detail::kGl8Weights[i];
      const std::complex<double> v = f(x);
      re.add(w * v.real());
      im.add(w * v.imag());
      l1.add(w * std::abs(v));
    }
  }
  return {{re.s, im.s}, l1.s};
}

}  // namespace

IntegralResult integrateInterval(const std::function<std::complex<double>(double)>& f,
                                 const QuadratureSpec& spec, double lo, double hi) {
  if (!(hi > lo)) throw DomainError("integrateInterval: interval must have positive length");
  if (spec.panels < 1 || spec.windowSigmas <= 0.0 || spec.relTol <= 0.0 ||
      spec.absTol < 0.0 || spec.maxDoublings < 0)
    throw DomainError("integrateInterval: invalid quadrature spec");

  const double width = hi - lo;
  int panels = spec.panels;
  std::complex<double> prev{}, prevPrev{};
  bool havePrev = false;
  for (int d = 0; d <= spec.maxDoublings; ++d, panels *= 2) {
    const PassResult pass = evaluatePass(f, lo, width, panels);
    if (havePrev) {
      const double delta = std::abs(pass.value - prev);
      if (delta <= spec.relTol * (std::abs(pass.value) + 1e-6 * pass.l1) + spec.absTol)
        return {pass.value, delta, pass.l1, panels};
    }
    prevPrev = prev;
    prev = pass.value;
    havePrev = true;
  }
  throw ConvergenceError("integrateInterval: no convergence after " +
                             std::to_string(spec.maxDoublings) + " doublings",
                         prev, prevPrev);
}

IntegralResult integrateWindowed(const std::function<std::complex<double>(double)>& f,
                                 const QuadratureSpec& spec, double center, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("integrateWindowed: window scale must be positive");
  if (!(spec.windowSigmas > 0.0))
    throw DomainError("integrateWindowed: invalid quadrature spec");
  const double half = spec.windowSigmas * sigma;
  return integrateInterval(f, spec, center - half, center + half);
}

std::complex<double> residueSum(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    const PoleSet& lowerPoles, double eps) {
  std::complex<double> total{};
  for (const Pole& pole : lowerPoles) {
    const double dist = std::abs(pole.location.imag());
    if (dist < 10.0 * eps)
      throw DomainError(
          "residueSum: pole within 10 eps of the real axis is ill-conditioned");
    // Circle radius: stay away from the real axis and from the other poles.
    double radius = 0.5 * dist;
    for (const Pole& other : lowerPoles) {
      const double sep = std::abs(other.location - pole.location);
      if (sep > 0.0) radius = std::min(radius, 0.4 * sep);
    }
    // Residue by spectrally convergent trapezoid on the circle:
    // Res = (rho / 2 pi) int_0^{2pi} f(z0 + rho e^{i t}) e^{i t} dt.
    constexpr int kNodes = 128;
    std::complex<double> acc{};
    for (int k = 0; k < kNodes; ++k) {
      const double t = 2.0 * kPi * k / kNodes;
      const std::complex<double> phase{std::cos(t), std::sin(t)};
      acc += f(pole.location + radius * phase) * phase;
    }
    total += radius * acc / static_cast<double>(kNodes);
  }
  return std::complex<double>{0.0, -2.0 * kPi} * total;
}

double etaSeriesTerm(double E, double a, double sigma) {
  if (!(E > 0.0)) throw DomainError("etaSeriesTerm: energy must be positive");
  if (!(a > 0.0)) throw DomainError("etaSeriesTerm: acceleration must be positive");
  if (!(sigma * a > 1.0))
    throw RegimeError("etaSeriesTerm: requires sigma * a > 1 (series in 1/(sigma a))");
  const double z = kPi * E / a;  // half of the thermal exponent
  double t;
  if (z < 1e-3) {
    // coth z - 1/z = z/3 - z^3/45 + ..., 1 - e^{-2z} = 2z(1 - z + 2z^2/3 - ...)
    t = kPi * kPi / 12.0 * (1.0 + z + 4.0 * z * z / 15.0);
  } else {
    const double numer = 0.5 * kPi * kPi / std::tanh(z) - 0.5 * kPi * a / E;
    t = numer / (-std::expm1(-2.0 * z));
  }
  return t / (sigma * sigma * a * a);
}

}  // namespace udw
