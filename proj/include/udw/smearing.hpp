//! Gaussian temporal smearing of detector amplitudes.
//!
//! A detector with resolution sigma weighs interaction amplitudes with the
//! normalized window fSigma. Products of two window amplitudes factorize
//! exactly into a window in the mean time and an overlap kernel gSigma in the
//! time difference; that identity is what turns two-time response integrals
//! into a single convolution and is pinned here by factorizationResidual.

#pragma once

namespace udw {

/// Normalized Gaussian window of standard deviation sigma:
/// fSigma(s) = exp(-s^2 / (2 sigma^2)) / sqrt(2 pi sigma^2).
double fSigma(double s, double sigma);

/// Overlap kernel gSigma(s) = exp(-s^2 / (8 sigma^2)); a Gaussian of standard
/// deviation 2 sigma normalized to gSigma(0) = 1.
double gSigma(double s, double sigma);

/// Residual of the amplitude factorization
///   sqrt(fSigma(t - s) fSigma(t - s')) - fSigma(t - (s + s')/2) gSigma(s - s'),
/// identically zero for all (t, s, s', sigma).
double factorizationResidual(double t, double s, double sPrime, double sigma);

}  // namespace udw
