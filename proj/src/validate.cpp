//! Implementation of the acceptance gate. Each criterion is a set of
//! sub-checks with tolerances pinned here, in code; the reported line shows
//! the sub-check that came closest to (or crossed) its tolerance.

#include "udw/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "udw/coherence.hpp"
#include "udw/errors.hpp"
#include "udw/propagators.hpp"
#include "udw/quadrature.hpp"
#include "udw/response.hpp"
#include "udw/smearing.hpp"
#include "udw/worldlines.hpp"

namespace udw {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const std::complex<double> kI{0.0, 1.0};

std::string fmtG(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmtS(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Unit absorption profile on [lo, hi]: removes the profile from every
/// quadrature-vs-closed comparison so only the propagator physics is tested.
DetectorModel unitAlpha(double sigma, double lo = 0.25, double hi = 4.0) {
  return makeDetector(sigma, CallableAlpha{[](double) { return 1.0; }, lo, hi});
}

/// Accumulates the sub-checks of one criterion and reduces them to the
/// CriterionResult line (worst sub-check by error/tolerance ratio).
class CriterionBuilder {
 public:
  void add(std::string label, double measured, double expected, double tol) {
    subs_.push_back({std::move(label), measured, expected, tol});
  }
  void require(std::string label, bool ok) {
    add(std::move(label), ok ? 1.0 : 0.0, 1.0, 0.0);
  }
  void note(std::string text) { extra_ = std::move(text); }

  void finish(CriterionResult& r) const {
    if (subs_.empty()) {
      r.pass = false;
      r.note = "no checks ran";
      return;
    }
    double worst = -1.0;
    const Sub* worstSub = nullptr;
    int passed = 0;
    for (const auto& s : subs_) {
      const double err = std::abs(s.measured - s.expected);
      const bool ok = err <= s.tol;
      passed += ok ? 1 : 0;
      const double ratio = s.tol > 0.0 ? err / s.tol : (ok ? 0.0 : 1e300);
      if (ratio > worst) {
        worst = ratio;
        worstSub = &s;
      }
    }
    r.pass = passed == static_cast<int>(subs_.size());
    r.measured = worstSub->measured;
    r.expected = worstSub->expected;
    r.tolerance = worstSub->tol;
    r.note = "tightest: " + worstSub->label + " [" + std::to_string(passed) + "/" +
             std::to_string(subs_.size()) + " checks]";
    if (!extra_.empty()) r.note += "; " + extra_;
  }

 private:
  struct Sub {
    std::string label;
    double measured = 0.0;
    double expected = 0.0;
    double tol = 0.0;
  };
  std::vector<Sub> subs_;
  std::string extra_;
};

// ---------------------------------------------------------------------------
// Criterion bodies

/// 1. Quadrature response of a uniformly accelerated detector reproduces the
///    Planck law E / (2 pi (e^{2 pi E / a} - 1)) to 1%.
void criterionPlanck(CriterionBuilder& b) {
  const QuadratureSpec spec{};
  const DetectorModel det = unitAlpha(50.0);
  const Worldline w = UniformAcceleration{1.0, {0.0, 0.0, 0.0, 0.0}};
  const double energies[] = {0.5, 1.0, 2.0, 3.0};
  const double frozen[] = {3.5941726334312286e-3, 2.9776880788837904e-4,
                           1.1100594196460298e-6, 3.1094477689763008e-9};
  for (int i = 0; i < 4; ++i) {
    const double p = responseGeneral(w, energies[i], 0.0, det, spec);
    b.add("E/a = " + fmtS(energies[i]), p, frozen[i], 0.01 * frozen[i]);
  }
}

/// 2. The leading finite-resolution correction: at sigma a = 5 the measured
///    relative excess over Planck matches etaSeriesTerm to 20%.
void criterionCorrection(CriterionBuilder& b) {
  const QuadratureSpec spec{};
  const DetectorModel det = unitAlpha(5.0);
  const double p = responseGeneral(UniformAcceleration{1.0, {0.0, 0.0, 0.0, 0.0}}, 1.0, 0.0,
                                   det, spec);
  const double excess = p / planckResponse(1.0, 1.0, det) - 1.0;
  const double eta = etaSeriesTerm(1.0, 1.0, 5.0);
  b.add("relative excess at sigma a = 5", excess, eta, 0.20 * eta);
  b.add("series coefficient at E = a", 25.0 * eta, 3.3887996671457086, 1e-9);
}

/// 3. A uniformly accelerated detector and a static detector in a thermal
///    bath at beta = 2 pi / a respond identically (0.1%).
void criterionThermalEquivalence(CriterionBuilder& b) {
  const QuadratureSpec spec{};
  const DetectorModel det = unitAlpha(50.0);
  const Worldline w = UniformAcceleration{1.0, {0.0, 0.0, 0.0, 0.0}};
  for (double E : {0.5, 1.0, 2.0}) {
    const double pAcc = responseGeneral(w, E, 0.0, det, spec);
    const double pTh = thermalStaticResponse(E, 2.0 * kPi, det, spec).value;
    b.add("E/a = " + fmtS(E), pTh, pAcc, 1e-3 * std::abs(pAcc));
  }
}

/// 4. The two full-line side integrals behind the pair coefficients match
///    their closed forms to 1e-6 (and the closed forms match frozen values).
void criterionSideIntegrals(CriterionBuilder& b) {
  QuadratureSpec spec{};
  const double frozenOdd[] = {2.06023824925758, 2.8813190399550292, 3.1298810356317586};
  const double frozenEven[] = {-0.59881450632262638, -1.7126885749596478,
                               -6.3066961898743247};
  const double energies[] = {0.5, 1.0, 2.0};
  for (int i = 0; i < 3; ++i) {
    const double E = energies[i];
    const auto odd = [E](double x) -> std::complex<double> {
      if (std::abs(x) < 1e-6) return {E, 0.0};
      return {std::sin(E * x) / std::sinh(x), 0.0};
    };
    const double closedOdd = oddSineIntegral(E, 1.0);
    b.add("odd closed frozen E = " + fmtS(E), closedOdd, frozenOdd[i],
          1e-10 * std::abs(frozenOdd[i]));
    const double quadOdd = integrateWindowed(odd, spec, 0.0, 4.0).value.real();
    b.add("odd quadrature E = " + fmtS(E), quadOdd, closedOdd, 1e-6 * std::abs(closedOdd));

    const auto even = [E](double S) -> std::complex<double> {
      if (std::abs(S) < 1e-4) return {-E * (E * E + 1.0) / 3.0, 0.0};
      const double sh = std::sinh(S);
      return {(E * std::cos(E * S) - std::cosh(S) / sh * std::sin(E * S)) / (sh * sh), 0.0};
    };
    const double closedEven = evenBracketIntegral(E, 1.0);
    b.add("even closed frozen E = " + fmtS(E), closedEven, frozenEven[i],
          1e-10 * std::abs(frozenEven[i]));
    const double quadEven = integrateWindowed(even, spec, 0.0, 3.0).value.real();
    b.add("even quadrature E = " + fmtS(E), quadEven, closedEven,
          1e-6 * std::abs(closedEven));
  }
}

/// 5. The energy-diagonal pair weight: the squared Fourier factor of the
///    detection window times the bookkeeping prefactor integrates to exactly
///    4 pi over the energy mismatch (1e-10).
void criterionDeltaNormalization(CriterionBuilder& b) {
  const QuadratureSpec spec{};
  const double sigma = 20.0;
  for (double dE : {0.0, 0.5 / sigma, 2.0 / sigma}) {
    const auto f = [&](double t) -> std::complex<double> {
      return fSigma(t, sigma) * std::exp(kI * dE * t);
    };
    const double measured = std::abs(integrateWindowed(f, spec, 0.0, sigma).value);
    const double expected = std::exp(-0.5 * sigma * sigma * dE * dE);
    b.add("window Fourier factor at dE sigma = " + fmtS(dE * sigma), measured, expected,
          1e-10 * expected);
  }
  const auto weight = [&](double q) -> std::complex<double> {
    return {4.0 * kPi * (sigma / std::sqrt(kPi)) * std::exp(-sigma * sigma * q * q), 0.0};
  };
  const double norm =
      integrateWindowed(weight, spec, 0.0, 1.0 / (sigma * std::sqrt(2.0))).value.real();
  b.add("diagonal weight normalization", norm, 4.0 * kPi, 1e-10 * 4.0 * kPi);
}

/// 6. Closed-form pair coefficients against the defining kernel quadrature,
///    coincident (r = 0) and separated (a r = 5), each to 10%.
void criterionPairClosedForms(CriterionBuilder& b) {
  const QuadratureSpec spec{};
  const DetectorModel detNear = unitAlpha(20.0, 0.5, 1.5);
  const double closedNear = gCoefficientNear(1.0, 0.0, 1.0, 0.0, detNear);
  b.add("coincident closed frozen", closedNear, -1.111266808597558e-8,
        1e-10 * std::abs(-1.111266808597558e-8));
  const double numericNear = gCoefficientNumeric(1.0, 0.0, 1.0, 0.0, detNear, spec);
  b.add("coincident: quadrature vs closed", numericNear, closedNear,
        0.10 * std::abs(closedNear));

  const DetectorModel detFar = unitAlpha(0.5, 0.5, 1.5);
  const double closedFar = gCoefficientFar(1.0, 5.0, 1.0, 5.0, detFar);
  const double numericFar = gCoefficientNumeric(1.0, 5.0, 1.0, 5.0, detFar, spec);
  b.add("separated (a r = 5): quadrature vs closed", numericFar, closedFar,
        0.10 * std::abs(closedFar));
  b.note("coincident closed = " + fmtG(closedNear) + " vs quadrature = " + fmtG(numericNear) +
         " (opposite sign; at equal energies and zero separation the defining integral is a "
         "perfect square, so the coefficient cannot be negative); separated closed = " +
         fmtG(closedFar) + " vs quadrature = " + fmtG(numericFar) +
         " (closed tail form is used far outside its sigma a >> 1 validity domain at "
         "sigma a = 0.5). See README, validation notes.");
}

/// 7. Coincident two-level pair: the closed g2 is anti-bunched with the
///    pinned depth 1 - sqrt(2 pi) / (deltaE sigma) and relaxes back to 1.
void criterionTwoLevelCoherence(CriterionBuilder& b) {
  const double sigma = 20.0;
  const DetectorModel det = makeDetector(sigma, TwoLevel{50.0, 5.0});
  const double g0 = g2TwoLevelNear(0.0, det);
  const double expected = 1.0 - std::sqrt(2.0 * kPi) / 100.0;
  b.add("g2(0) closed value", g0, expected, 1e-10);
  b.require("g2(0) < 1 (anti-bunching)", g0 < 1.0);
  bool monotone = true;
  double prev = g0;
  for (int k = 1; k <= 20; ++k) {
    const double g = g2TwoLevelNear(0.5 * sigma * k, det);
    monotone = monotone && g >= prev - 1e-15;
    prev = g;
  }
  b.require("g2 nondecreasing in |dtau|", monotone);
  b.add("g2(10 sigma) back to 1", g2TwoLevelNear(10.0 * sigma, det), 1.0, 1e-6);
}

/// 8. Separating a thermal pair from an accelerated pair: identical when
///    coincident at beta = 2 pi / a, exponential (-2a) vs power-law (r^-2)
///    decay when separated.
void criterionThermalVsAccelerated(CriterionBuilder& b) {
  // Kernel-level identity at matched temperature.
  const std::complex<double> probes[] = {{0.7, -0.3}, {2.1, -1.0}};
  for (const auto& w : probes) {
    const auto kAcc = acceleratedPairKernel(w, 1.0, 0.0);
    const auto kTh = thermalKernel(w, 2.0 * kPi, 0.0);
    b.add("kernel identity at w = " + fmtS(w.real()) + " - " + fmtS(-w.imag()) + "i",
          std::abs(kTh - kAcc) / std::abs(kAcc), 0.0, 1e-12);
  }
  // Coincident coefficient identity.
  const DetectorModel det20 = unitAlpha(20.0, 0.5, 1.5);
  for (double dtau : {0.0, 10.0}) {
    const double near = gCoefficientNear(1.0, dtau, 1.0, 0.0, det20);
    const double th = gCoefficientThermal(1.0, dtau, 2.0 * kPi, 0.0, det20);
    b.add("coincident coefficient at dtau = " + fmtS(dtau), th, near, 1e-12 * std::abs(near));
  }
  // Separated accelerated pair: log-slope of the peak coefficient is -2a.
  const DetectorModel detHalf = unitAlpha(0.5, 0.5, 1.5);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (double r = 5.0; r <= 10.0 + 1e-9; r += 0.5) {
    const double y = std::log(std::abs(gCoefficientFar(1.0, r, 1.0, r, detHalf)));
    sx += r;
    sy += y;
    sxx += r * r;
    sxy += r * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  b.add("accelerated pair log-slope over r in [5, 10]/a", slope, -2.0, 0.04);
  // Separated thermal pair: 1/r^2, so doubling r quarters the coefficient...
  const double cT5 = gCoefficientThermal(1.0, 5.0, 2.0 * kPi, 5.0, detHalf);
  const double cT10 = gCoefficientThermal(1.0, 10.0, 2.0 * kPi, 10.0, detHalf);
  b.add("thermal pair coefficient ratio r -> 2r", cT5 / cT10, 4.0, 4e-10);
  // ...and its local log-slope is -2/r, far from the accelerated -2a.
  const double up = std::log(std::abs(gCoefficientThermal(1.0, 5.25, 2.0 * kPi, 5.25, detHalf)));
  const double dn = std::log(std::abs(gCoefficientThermal(1.0, 4.75, 2.0 * kPi, 4.75, detHalf)));
  b.add("thermal pair local log-slope at r = 5/a", (up - dn) / 0.5, -0.4, 0.1);
}

/// 9. A profile-driven switch-on trajectory: inert before the switch, Planck
///    at the asymptotic acceleration after it, and profile edits beyond the
///    quadrature window leave the result bit-identical.
void criterionSwitchTrajectory(CriterionBuilder& b) {
  // The pre-switch response is consistent with zero, so the subtraction
  // correction there is evaluation noise; 1e-12 absolute is six orders below
  // the tolerances checked and nine above the noise plateau.
  QuadratureSpec spec{};
  spec.absTol = 1e-12;
  const double sigma = 25.0;
  const auto base = [](double tau) { return 0.5 * (1.0 + std::tanh(tau / 25.0)); };
  const auto sstep = [](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * (3.0 - 2.0 * x);
  };
  // The edit lives in [22 sigma, 23 sigma]; quadrature events for the
  // measurement at tau = 7 sigma reach tau + 12 sigma = 19 sigma.
  const auto edited = [base, sstep](double tau) {
    return base(tau) * (1.0 - 0.5 * sstep((tau - 550.0) / 25.0));
  };
  const Worldline wBase = VariableAcceleration(base, -21.5 * sigma, 26.0 * sigma);
  const Worldline wEdit = VariableAcceleration(edited, -21.5 * sigma, 26.0 * sigma);
  const DetectorModel det = unitAlpha(sigma, 0.5, 1.5);

  const double pLate = responseGeneral(wBase, 1.0, 7.0 * sigma, det, spec);
  const double planck = planckResponse(1.0, 1.0, det);
  b.add("post-switch plateau is Planck", pLate, planck, 0.01 * planck);

  const double pEarly = responseGeneral(wBase, 1.0, -7.0 * sigma, det, spec);
  b.add("pre-switch response is inert", pEarly / planck, 0.0, 0.01);

  const double pEdit = responseGeneral(wEdit, 1.0, 7.0 * sigma, det, spec);
  b.add("edits beyond the window leave the response unchanged",
        (pEdit - pLate) / std::abs(pLate), 0.0, 1e-10);
}

/// 10. The truncated null-coordinate closed forms against the residue method
///     and the shifted-contour quadrature, for every pole pattern.
void criterionTruncatedExpansion(CriterionBuilder& b) {
  const QuadratureSpec spec{};
  // Residue engine against direct quadrature on a two-pole-pair test
  // function that decays in the lower half plane.
  const auto rational = [](std::complex<double> z) {
    return std::exp(-kI * 1.5 * z) / ((z * z + 1.0) * (z * z + 4.0));
  };
  const auto onAxis = [&](double t) { return rational({t, 0.0}); };
  const double direct = integrateWindowed(onAxis, spec, 0.0, 60.0).value.real();
  const std::complex<double> viaResidues =
      residueSum(rational, {{{0.0, -1.0}, 1}, {{0.0, -2.0}, 1}}, 1e-6);
  b.add("residue sum vs direct quadrature", viaResidues.real(), direct,
        1e-6 * std::abs(direct));
  b.add("residue sum is real", viaResidues.imag(), 0.0, 1e-9);

  const double E = 1.1;
  const NullDerivatives twoPoles{1.3, 0.9, 0.8, 2.1};
  const double closed2 = singleAxisClosedForm(twoPoles, E, 1.0);
  b.add("two pole pairs: frozen value", closed2, 1.2278757044201266e-3,
        1e-10 * 1.2278757044201266e-3);
  b.add("two pole pairs: contour quadrature",
        singleAxisTruncatedQuadrature(twoPoles, E, 1.0, spec), closed2, 1e-6 * closed2);

  const NullDerivatives merged{1.0, 1.0, 1.0, 1.0};
  const double closedM = singleAxisClosedForm(merged, E, 1.0);
  b.add("merged pole pair: frozen value", closedM, 3.11170655933994e-4,
        1e-10 * 3.11170655933994e-4);
  b.add("merged pole pair: contour quadrature",
        singleAxisTruncatedQuadrature(merged, E, 1.0, spec), closedM, 1e-6 * closedM);

  const NullDerivatives vanishing{1.3, -0.9, 0.8, -2.1};
  b.add("real poles only: closed form vanishes", singleAxisClosedForm(vanishing, E, 1.0),
        0.0, 0.0);
  b.add("real poles only: quadrature vanishes",
        singleAxisTruncatedQuadrature(vanishing, E, 1.0, spec), 0.0, 1e-6 * closed2);

  // Truncating the hyperbola at the cubic moves the pole from 2 pi / a to
  // sqrt(24) / a; the response ratio must sit inside the matching band.
  const DetectorModel det = unitAlpha(50.0);
  const double ratio = singleAxisClosedForm(merged, 1.0, 1.0) / planckResponse(1.0, 1.0, det);
  const double deltaB = 2.0 * kPi - std::sqrt(24.0);
  const double lo = 0.5 * std::exp(-deltaB);
  const double hi = 2.0 * std::exp(deltaB);
  b.add("truncation-vs-Planck ratio inside [" + fmtS(lo) + ", " + fmtS(hi) + "]", ratio,
        0.5 * (lo + hi), 0.5 * (hi - lo));
}

}  // namespace

std::vector<CriterionResult> runAcceptanceSuite(std::ostream& out) {
  struct Entry {
    int id;
    const char* name;
    void (*body)(CriterionBuilder&);
  };
  const Entry entries[] = {
      {1, "uniformly accelerated detector obeys the Planck law", criterionPlanck},
      {2, "finite-resolution correction matches the series term", criterionCorrection},
      {3, "uniform acceleration is equivalent to a thermal bath at T = a/2pi",
       criterionThermalEquivalence},
      {4, "side-integral identities hold against direct quadrature", criterionSideIntegrals},
      {5, "energy-diagonal pair weight is normalized to 4 pi", criterionDeltaNormalization},
      {6, "pair-coefficient closed forms match the kernel quadrature",
       criterionPairClosedForms},
      {7, "coincident two-level pair is anti-bunched with the closed g2 values",
       criterionTwoLevelCoherence},
      {8, "thermal pair and accelerated pair separate beyond coincidence",
       criterionThermalVsAccelerated},
      {9, "switch-on trajectory reaches Planck and respects quadrature locality",
       criterionSwitchTrajectory},
      {10, "truncated-expansion closed forms pass the residue method",
       criterionTruncatedExpansion},
  };

  std::vector<CriterionResult> results;
  for (const auto& e : entries) {
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    CriterionBuilder b;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.body(b);
    } catch (const std::exception& ex) {
      b.require(std::string("unexpected exception: ") + ex.what(), false);
    }
    r.wallMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
    b.finish(r);
    out << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name
        << "  measured=" << fmtG(r.measured) << " expected=" << fmtG(r.expected)
        << " tol=" << fmtS(r.tolerance) << " (t=" << fmtS(r.wallMs) << " ms)";
    if (!r.note.empty()) out << " -- " << r.note;
    out << "\n";
    out.flush();
    results.push_back(std::move(r));
  }
  return results;
}

int summarizeAcceptance(const std::vector<CriterionResult>& results, std::ostream& out) {
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  const int total = static_cast<int>(results.size());
  out << "acceptance: " << (total - failed) << "/" << total << " criteria passed";
  if (failed > 0) out << ", " << failed << " FAILED";
  out << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace udw
