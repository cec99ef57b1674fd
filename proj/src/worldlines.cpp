#include "udw/worldlines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "gl8.hpp"
#include "udw/errors.hpp"

namespace udw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logAddExp(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(std::min(x, y) - m));
}

/// Cubic Hermite basis on s in [0, 1].
struct HermiteBasis {
  double h00, h10, h01, h11;
  explicit HermiteBasis(double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    h10 = s3 - 2.0 * s2 + s;
    h01 = -2.0 * s3 + 3.0 * s2;
    h11 = s3 - s2;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// VariableAcceleration

struct VariableAcceleration::Cache {
  double h = 0.0;
  int n = 0;
  std::vector<double> chi;   // rapidity at nodes
  std::vector<double> aVal;  // profile at nodes (Hermite slope of chi)
  std::vector<double> logU;  // log int_tauMin^node e^{+chi}
  std::vector<double> logV;  // log int_tauMin^node e^{-chi}
};

namespace {

/// chi on segment k of the cache, s = (tau - t_k)/h in [0, 1].
double chiOnSegment(const VariableAcceleration::Cache& c, int k, double s) {
  const HermiteBasis b(s);
  return b.h00 * c.chi[k] + b.h10 * c.h * c.aVal[k] + b.h01 * c.chi[k + 1] +
         b.h11 * c.h * c.aVal[k + 1];
}

/// log of int over [t_k + lo*h, t_k + hi*h] of e^{sign * chi}, single GL-8 panel.
double logSegmentIntegral(const VariableAcceleration::Cache& c, int k, double lo, double hi,
                          double sign) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  if (half <= 0.0) return kNegInf;
  double phi[8];
  double m = kNegInf;
  for (int i = 0; i < 8; ++i) {
    const double s = mid + half * detail::kGl8Nodes[i];
    phi[i] = sign * chiOnSegment(c, k, s);
    m = std::max(m, phi[i]);
  }
  double sum = 0.0;
  for (int i = 0; i < 8; ++i) sum += detail::kGl8Weights[i] * std::exp(phi[i] - m);
  return m + std::log(half * c.h * sum);
}

/// GL-8 panel over [t_k + lo*h, t_k + hi*h] of both e^{+(chi - chiRef)} and
/// e^{-(chi - chiRef)}, in linear space. Overflow propagates as +inf.
struct ExpPair {
  double plus = 0.0;
  double minus = 0.0;
};

ExpPair segmentExpPair(const VariableAcceleration::Cache& c, int k, double lo, double hi,
                       double chiRef) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  ExpPair out;
  if (half <= 0.0) return out;
  for (int i = 0; i < 8; ++i) {
    const double s = mid + half * detail::kGl8Nodes[i];
    const double dchi = chiOnSegment(c, k, s) - chiRef;
    out.plus += detail::kGl8Weights[i] * std::exp(dchi);
    out.minus += detail::kGl8Weights[i] * std::exp(-dchi);
  }
  out.plus *= half * c.h;
  out.minus *= half * c.h;
  return out;
}

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

VariableAcceleration::VariableAcceleration(std::function<double(double)> aOfTau, double tauMin,
                                           double tauMax)
    : a_(std::move(aOfTau)), tauMin_(tauMin), tauMax_(tauMax) {
  if (!a_) throw DomainError("VariableAcceleration: null profile");
  if (!(tauMax_ > tauMin_)) throw DomainError("VariableAcceleration: tauMax must exceed tauMin");
  const double range = tauMax_ - tauMin_;

  // Grid step: resolve the profile scale (|a| h small keeps both the Simpson
  // rapidity update and the in-segment exponentials accurate).
  double aMax = 0.0;
  for (int i = 0; i <= 2048; ++i) {
    const double tau = tauMin_ + range * static_cast<double>(i) / 2048.0;
    aMax = std::max(aMax, std::abs(a_(tau)));
  }
  const double hTarget = std::min(0.05 / (1.0 + aMax), range / 16.0);
  const int n = static_cast<int>(std::ceil(range / hTarget));

  auto cache = std::make_shared<Cache>();
  cache->h = range / n;
  cache->n = n;
  cache->chi.resize(n + 1);
  cache->aVal.resize(n + 1);
  cache->logU.assign(n + 1, kNegInf);
  cache->logV.assign(n + 1, kNegInf);

  // Strictly forward pass: rapidity by Simpson steps, then the log-space
  // prefix integrals of e^{+-chi}. Editing the profile beyond some tau can
  // therefore never perturb cached values at earlier tau.
  cache->chi[0] = 0.0;
  cache->aVal[0] = a_(tauMin_);
  const double h = cache->h;
  Kahan chiSum;  // plain summation drifts ~1e-12 per unit tau on long domains
  for (int k = 0; k < n; ++k) {
    const double t = tauMin_ + k * h;
    const double aMid = a_(t + 0.5 * h);
    cache->aVal[k + 1] = a_(t + h);
    chiSum.add(h / 6.0 * (cache->aVal[k] + 4.0 * aMid + cache->aVal[k + 1]));
    cache->chi[k + 1] = chiSum.sum;
  }
  for (int k = 0; k < n; ++k) {
    cache->logU[k + 1] = logAddExp(cache->logU[k], logSegmentIntegral(*cache, k, 0.0, 1.0, +1.0));
    cache->logV[k + 1] = logAddExp(cache->logV[k], logSegmentIntegral(*cache, k, 0.0, 1.0, -1.0));
  }
  cache_ = std::move(cache);
}

namespace {

/// Clamp tau into the cached range (tolerating edge roundoff) and return the
/// segment index plus local coordinate.
std::pair<int, double> locate(const VariableAcceleration::Cache& c, double tauMin, double tauMax,
                              double tau) {
  const double slack = 1e-9 * (1.0 + tauMax - tauMin);
  if (tau < tauMin - slack || tau > tauMax + slack)
    throw DomainError("VariableAcceleration: proper time outside the cached range");
  const double clamped = std::clamp(tau, tauMin, tauMax);
  int k = static_cast<int>((clamped - tauMin) / c.h);
  k = std::clamp(k, 0, c.n - 1);
  const double s = (clamped - (tauMin + k * c.h)) / c.h;
  return {k, std::clamp(s, 0.0, 1.0)};
}

}  // namespace

double VariableAcceleration::aAt(double tau) const { return a_(tau); }

double VariableAcceleration::aDotAt(double tau) const {
  const double h = 1e-4 * std::max(1.0, std::abs(tau));
  return (-a_(tau + 2 * h) + 8.0 * a_(tau + h) - 8.0 * a_(tau - h) + a_(tau - 2 * h)) / (12.0 * h);
}

double VariableAcceleration::chiAt(double tau) const {
  const auto [k, s] = locate(*cache_, tauMin_, tauMax_, tau);
  return chiOnSegment(*cache_, k, s);
}

double VariableAcceleration::logIntExpChi(double tau) const {
  const auto [k, s] = locate(*cache_, tauMin_, tauMax_, tau);
  return logAddExp(cache_->logU[k], logSegmentIntegral(*cache_, k, 0.0, s, +1.0));
}

double VariableAcceleration::logIntExpMChi(double tau) const {
  const auto [k, s] = locate(*cache_, tauMin_, tauMax_, tau);
  return logAddExp(cache_->logV[k], logSegmentIntegral(*cache_, k, 0.0, s, -1.0));
}

VariableAcceleration::NullIncrements VariableAcceleration::nullIncrements(double tau,
                                                                          double y) const {
  if (y == 0.0) return {0.0, 0.0};
  const double sign = y > 0.0 ? 1.0 : -1.0;
  const double ay = std::abs(y);
  const double p = tau - 0.5 * ay;
  const double q = tau + 0.5 * ay;
  const double chiTau = chiAt(tau);

  NullIncrements out;
  if (ay <= cache_->h) {
    // Short increments: direct single-panel quadrature of e^{+-(chi - chi(tau))}.
    double ju = 0.0, jv = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double s = tau + 0.5 * ay * detail::kGl8Nodes[i];
      const double dchi = chiAt(s) - chiTau;
      ju += detail::kGl8Weights[i] * std::exp(dchi);
      jv += detail::kGl8Weights[i] * std::exp(-dchi);
    }
    out.ju = 0.5 * ay * ju;
    out.jv = 0.5 * ay * jv;
  } else {
    // Walk the cached segments from p to q, accumulating the positive
    // integrands of e^{+-(chi - chi(tau))} directly. Never computed as a
    // difference of prefix integrals: a prefix dominated by some faraway
    // stretch of the worldline would swallow a local increment whole.
    const auto [kp, sp] = locate(*cache_, tauMin_, tauMax_, p);
    const auto [kq, sq] = locate(*cache_, tauMin_, tauMax_, q);
    if (kp == kq) {
      const ExpPair pair = segmentExpPair(*cache_, kp, sp, sq, chiTau);
      out.ju = pair.plus;
      out.jv = pair.minus;
    } else {
      Kahan ju, jv;
      const ExpPair head = segmentExpPair(*cache_, kp, sp, 1.0, chiTau);
      ju.add(head.plus);
      jv.add(head.minus);
      for (int k = kp + 1; k < kq; ++k) {
        const ExpPair full = segmentExpPair(*cache_, k, 0.0, 1.0, chiTau);
        ju.add(full.plus);
        jv.add(full.minus);
      }
      const ExpPair tail = segmentExpPair(*cache_, kq, 0.0, sq, chiTau);
      ju.add(tail.plus);
      jv.add(tail.minus);
      out.ju = ju.sum;
      out.jv = jv.sum;
    }
  }
  if (!std::isfinite(out.ju) || !std::isfinite(out.jv))
    throw RegimeError("VariableAcceleration: rapidity excursion too large for null increments");
  out.ju *= sign;
  out.jv *= sign;
  return out;
}

VariableAcceleration::IncrementTable VariableAcceleration::incrementTable(
    double tau, double halfWidth) const {
  if (!(halfWidth > 0.0)) throw DomainError("incrementTable: halfWidth must be positive");
  const Cache& c = *cache_;
  const auto [k0, s0] = locate(c, tauMin_, tauMax_, tau);

  IncrementTable t;
  t.cache_ = cache_;
  t.tauMin_ = tauMin_;
  t.tau_ = tau;
  t.chiTau_ = chiOnSegment(c, k0, s0);

  const double lo = std::max(tauMin_, tau - halfWidth);
  const double hi = std::min(tauMax_, tau + halfWidth);
  const int jLo = std::clamp(static_cast<int>(std::floor((lo - tauMin_) / c.h)), 0, c.n);
  const int jHi = std::clamp(static_cast<int>(std::ceil((hi - tauMin_) / c.h)), 0, c.n);
  t.jLo_ = jLo;
  t.mu_.assign(jHi - jLo + 1, 0.0);
  t.mv_.assign(jHi - jLo + 1, 0.0);

  // Anchor at tau itself, then extend outward; every prefix is a
  // same-signed sum of segment integrals.
  const ExpPair left0 = segmentExpPair(c, k0, 0.0, s0, t.chiTau_);
  t.mu_[k0 - jLo] = -left0.plus;
  t.mv_[k0 - jLo] = -left0.minus;
  if (k0 + 1 <= jHi) {
    const ExpPair right0 = segmentExpPair(c, k0, s0, 1.0, t.chiTau_);
    t.mu_[k0 + 1 - jLo] = right0.plus;
    t.mv_[k0 + 1 - jLo] = right0.minus;
    Kahan mu, mv;
    mu.add(right0.plus);
    mv.add(right0.minus);
    for (int j = k0 + 2; j <= jHi; ++j) {
      const ExpPair full = segmentExpPair(c, j - 1, 0.0, 1.0, t.chiTau_);
      mu.add(full.plus);
      mv.add(full.minus);
      t.mu_[j - jLo] = mu.sum;
      t.mv_[j - jLo] = mv.sum;
    }
  }
  {
    Kahan mu, mv;
    mu.add(-left0.plus);
    mv.add(-left0.minus);
    for (int j = k0 - 1; j >= jLo; --j) {
      const ExpPair full = segmentExpPair(c, j, 0.0, 1.0, t.chiTau_);
      mu.add(-full.plus);
      mv.add(-full.minus);
      t.mu_[j - jLo] = mu.sum;
      t.mv_[j - jLo] = mv.sum;
    }
  }
  for (std::size_t i = 0; i < t.mu_.size(); ++i)
    if (!std::isfinite(t.mu_[i]) || !std::isfinite(t.mv_[i]))
      throw RegimeError(
          "incrementTable: rapidity excursion too large across the increment window");
  return t;
}

VariableAcceleration::NullIncrements VariableAcceleration::IncrementTable::at(double y) const {
  if (y == 0.0) return {0.0, 0.0};
  const Cache& c = *cache_;
  const double sign = y > 0.0 ? 1.0 : -1.0;
  const double ay = std::abs(y);
  const int jHi = jLo_ + static_cast<int>(mu_.size()) - 1;

  NullIncrements out;
  if (ay <= c.h) {
    double ju = 0.0, jv = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double s = tau_ + 0.5 * ay * detail::kGl8Nodes[i];
      const int k = std::clamp(static_cast<int>((s - tauMin_) / c.h), jLo_, jHi - 1);
      const double dchi = chiOnSegment(c, k, (s - (tauMin_ + k * c.h)) / c.h) - chiTau_;
      ju += detail::kGl8Weights[i] * std::exp(dchi);
      jv += detail::kGl8Weights[i] * std::exp(-dchi);
    }
    out.ju = 0.5 * ay * ju;
    out.jv = 0.5 * ay * jv;
  } else {
    // Anchored evaluation: int_tau^s is the tabulated node prefix plus one
    // partial segment; the p and q prefixes have opposite signs, so the
    // increment is a sum, never a cancellation.
    const auto anchored = [&](double s) -> ExpPair {
      const double slack = 1e-9 * (1.0 + c.h * c.n);
      const double jLoTau = tauMin_ + jLo_ * c.h;
      const double jHiTau = tauMin_ + jHi * c.h;
      if (s < jLoTau - slack || s > jHiTau + slack)
        throw DomainError("IncrementTable: event outside the tabulated span");
      const double clamped = std::clamp(s, jLoTau, jHiTau);
      const int k = std::clamp(static_cast<int>((clamped - tauMin_) / c.h), jLo_, jHi - 1);
      const ExpPair part =
          segmentExpPair(c, k, 0.0, (clamped - (tauMin_ + k * c.h)) / c.h, chiTau_);
      return {mu_[k - jLo_] + part.plus, mv_[k - jLo_] + part.minus};
    };
    const ExpPair atQ = anchored(tau_ + 0.5 * ay);
    const ExpPair atP = anchored(tau_ - 0.5 * ay);
    out.ju = atQ.plus - atP.plus;
    out.jv = atQ.minus - atP.minus;
  }
  if (!std::isfinite(out.ju) || !std::isfinite(out.jv))
    throw RegimeError("IncrementTable: rapidity excursion too large for null increments");
  out.ju *= sign;
  out.jv *= sign;
  return out;
}

double VariableAcceleration::coordinateTimeAt(double tau) const {
  const double lu = logIntExpChi(tau);
  const double lv = logIntExpMChi(tau);
  if (lu > 700.0 || lv > 700.0)
    throw RegimeError("VariableAcceleration: coordinate time overflows; use interval queries");
  return tauMin_ + 0.5 * (std::exp(lu) + std::exp(lv));
}

Event VariableAcceleration::positionAt(double tau) const {
  const double lu = logIntExpChi(tau);
  const double lv = logIntExpMChi(tau);
  if (lu > 700.0 || lv > 700.0)
    throw RegimeError("VariableAcceleration: coordinates overflow; use interval queries");
  const double du = std::exp(lu);
  const double dv = std::exp(lv);
  return Event{tauMin_ + 0.5 * (du + dv), 0.5 * (du - dv), 0.0, 0.0};
}

std::array<double, 4> VariableAcceleration::velocityAt(double tau) const {
  const double chi = chiAt(tau);
  return {std::cosh(chi), std::sinh(chi), 0.0, 0.0};
}

// ---------------------------------------------------------------------------
// SingleAxisNull helpers

namespace {

double fdFirst(const std::function<double(double)>& f, double tau) {
  const double h = std::max(1e-5, 1e-5 * std::abs(tau));
  return (-f(tau + 2 * h) + 8.0 * f(tau + h) - 8.0 * f(tau - h) + f(tau - 2 * h)) / (12.0 * h);
}

double fdSecond(const std::function<double(double)>& f, double tau) {
  const double h = 5e-3 * std::max(1.0, std::abs(tau));
  return (-f(tau + 2 * h) + 16.0 * f(tau + h) - 30.0 * f(tau) + 16.0 * f(tau - h) -
          f(tau - 2 * h)) /
         (12.0 * h * h);
}

double fdThird(const std::function<double(double)>& f, double tau) {
  const double h = 2e-3 * std::max(1.0, std::abs(tau));
  return (f(tau + 2 * h) - 2.0 * f(tau + h) + 2.0 * f(tau - h) - f(tau - 2 * h)) /
         (2.0 * h * h * h);
}

double nullCoordinateDerivative(const std::function<double(double)>& f,
                                const std::function<double(double)>& analytic, double tau,
                                int order) {
  if (analytic) return analytic(tau);
  switch (order) {
    case 1: return fdFirst(f, tau);
    case 2: return fdSecond(f, tau);
    case 3: return fdThird(f, tau);
    default: throw DomainError("derivative order must be 1, 2, or 3");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Free functions over the variant

Event position(const Worldline& w, double tau) {
  struct Visitor {
    double tau;
    Event operator()(const UniformAcceleration& u) const {
      const double at = u.a * tau;
      return Event{u.offset[0] + std::sinh(at) / u.a,
                   u.offset[1] + (std::cosh(at) - 1.0) / u.a, u.offset[2], u.offset[3]};
    }
    Event operator()(const StaticWorldline& s) const {
      return Event{tau, s.position[0], s.position[1], s.position[2]};
    }
    Event operator()(const VariableAcceleration& v) const { return v.positionAt(tau); }
    Event operator()(const SingleAxisNull& s) const {
      const double u = s.u(tau);
      const double v = s.v(tau);
      return Event{0.5 * (u + v), 0.5 * (u - v), 0.0, 0.0};
    }
  };
  return std::visit(Visitor{tau}, w);
}

std::array<double, 4> derivative(const Worldline& w, double tau, int order) {
  if (order < 1 || order > 3) throw DomainError("derivative order must be 1, 2, or 3");
  struct Visitor {
    double tau;
    int order;
    std::array<double, 4> operator()(const UniformAcceleration& u) const {
      const double at = u.a * tau;
      const double c = std::cosh(at), s = std::sinh(at);
      switch (order) {
        case 1: return {c, s, 0.0, 0.0};
        case 2: return {u.a * s, u.a * c, 0.0, 0.0};
        default: return {u.a * u.a * c, u.a * u.a * s, 0.0, 0.0};
      }
    }
    std::array<double, 4> operator()(const StaticWorldline&) const {
      if (order == 1) return {1.0, 0.0, 0.0, 0.0};
      return {0.0, 0.0, 0.0, 0.0};
    }
    std::array<double, 4> operator()(const VariableAcceleration& v) const {
      const double chi = v.chiAt(tau);
      const double c = std::cosh(chi), s = std::sinh(chi);
      if (order == 1) return {c, s, 0.0, 0.0};
      const double a = v.aAt(tau);
      if (order == 2) return {a * s, a * c, 0.0, 0.0};
      const double aDot = v.aDotAt(tau);
      return {a * a * c + aDot * s, a * a * s + aDot * c, 0.0, 0.0};
    }
    std::array<double, 4> operator()(const SingleAxisNull& s) const {
      const double du = nullCoordinateDerivative(s.u, s.uDerivatives[order - 1], tau, order);
      const double dv = nullCoordinateDerivative(s.v, s.vDerivatives[order - 1], tau, order);
      return {0.5 * (du + dv), 0.5 * (du - dv), 0.0, 0.0};
    }
  };
  return std::visit(Visitor{tau, order}, w);
}

double properAcceleration(const Worldline& w, double tau) {
  if (std::holds_alternative<UniformAcceleration>(w))
    return std::abs(std::get<UniformAcceleration>(w).a);
  if (std::holds_alternative<StaticWorldline>(w)) return 0.0;
  if (std::holds_alternative<VariableAcceleration>(w))
    return std::abs(std::get<VariableAcceleration>(w).aAt(tau));
  const auto acc = derivative(w, tau, 2);
  // Single-axis: acc.acc = d2u * d2v in null coordinates, negative for
  // timelike-normalized motion.
  const double normSq = -minkowskiNorm(acc);
  return std::sqrt(std::max(0.0, normSq));
}

double properTimeOfCoordinateTime(const Worldline& w, double t) {
  if (std::holds_alternative<UniformAcceleration>(w)) {
    const auto& u = std::get<UniformAcceleration>(w);
    return std::asinh(u.a * (t - u.offset[0])) / u.a;
  }
  if (std::holds_alternative<StaticWorldline>(w)) return t;

  // x0(tau) is strictly increasing with slope >= 1: bracket then bisect.
  const auto x0 = [&](double tau) { return position(w, tau).x0; };
  double lo = t, hi = t;
  if (std::holds_alternative<VariableAcceleration>(w)) {
    const auto& v = std::get<VariableAcceleration>(w);
    lo = v.tauMin();
    hi = v.tauMax();
    if (x0(lo) > t || x0(hi) < t)
      throw DomainError("properTimeOfCoordinateTime: t outside the cached range");
  } else {
    double step = 1.0;
    while (x0(lo) > t) { lo -= step; step *= 2.0; }
    step = 1.0;
    while (x0(hi) < t) { hi += step; step *= 2.0; }
  }
  const double tol = 1e-12 * (1.0 + std::abs(t));
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    (x0(mid) < t ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double lightDelay(double a, double d) {
  if (!(a > 0.0)) throw DomainError("lightDelay: acceleration must be positive");
  if (d < 0.0) throw DomainError("lightDelay: separation must be non-negative");
  return 2.0 / a * std::asinh(0.5 * a * d);
}

PairGeometry makePairGeometry(double a, double d) {
  return PairGeometry{a, d, lightDelay(a, d)};
}

}  // namespace udw
