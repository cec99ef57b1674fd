#include "udw/smearing.hpp"

#include <cmath>

#include "udw/errors.hpp"

namespace udw {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double fSigma(double s, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("fSigma: sigma must be positive");
  const double z = s / sigma;
  return std::exp(-0.5 * z * z) / std::sqrt(kTwoPi * sigma * sigma);
}

double gSigma(double s, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("gSigma: sigma must be positive");
  const double z = s / sigma;
  return std::exp(-z * z / 8.0);
}

double factorizationResidual(double t, double s, double sPrime, double sigma) {
  const double lhs = std::sqrt(fSigma(t - s, sigma) * fSigma(t - sPrime, sigma));
  const double rhs = fSigma(t - 0.5 * (s + sPrime), sigma) * gSigma(s - sPrime, sigma);
  return lhs - rhs;
}

}  // namespace udw
