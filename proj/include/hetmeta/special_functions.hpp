// Copyright (c) 2026 the hetnet-meta authors.
// SPDX-License-Identifier: Apache-2.0
#ifndef HETMETA_SPECIAL_FUNCTIONS_HPP
#define HETMETA_SPECIAL_FUNCTIONS_HPP

#include <complex>

// Scalar special functions used by the projection and moment engines.  All
// routines are self contained (no external math library) and deterministic.
namespace hetmeta::sf {

// Modified Bessel function of the first kind, order zero.
// Power series for x <= 40, asymptotic expansion beyond (AMS55 9.7.1).
// Throws std::range_error when e^x overflows (x > 709.78).
double bessel_i0(double x);

// exp(-|x|) * I0(x).  Never overflows; use for Rician densities where the
// exponential factor is folded into the caller's own exponent.
double bessel_i0_scaled(double x);

// First-order Marcum Q function Q1(a, b) = P(Rice(a,1) > b) for a, b >= 0.
// Evaluated as a Poisson mixture of Poisson tails, summed outward from the
// mixture mode so no intermediate term underflows.  Absolute error < 1e-12.
double marcum_q1(double a, double b);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a), a > 0,
// x >= 0.  Series for x < a+1, continued fraction otherwise.
double gamma_q(double a, double x);

// Gauss hypergeometric 2F1(a, b; c; z) for z <= 0 and complex first
// parameter.  The Pfaff transform w = z/(z-1) maps the argument into [0, 1)
// where the defining series applies.  Intended for the interference-factor
// family b in (-1, 0], c = b + 1; large imaginary |a| is rerouted through an
// integral representation that is only valid in that family.
// Throws AccuracyError if neither route converges.
std::complex<double> gauss_2f1_neg(std::complex<double> a, double b, double c,
                                   double z);

// Regularized incomplete beta I_x(p, q), x in [0,1], p, q > 0, by the
// Lentz continued fraction with the symmetry switch at x = (p+1)/(p+q+2).
double regularized_incomplete_beta(double x, double p, double q);

}  // namespace hetmeta::sf

#endif  // HETMETA_SPECIAL_FUNCTIONS_HPP
