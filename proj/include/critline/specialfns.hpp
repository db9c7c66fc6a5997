#pragma once

#include <complex>

#include "critline/errors.hpp"

namespace critline {

using Complex = std::complex<double>;

// Principal branch of log Gamma(s): upward recursion to Re >= 10 followed
// by a Stirling series with 12 Bernoulli terms. Relative accuracy ~1e-12
// for |s| <= 1e5. Rejects s within 1e-8 of a non-positive integer.
Complex log_gamma(Complex s);

// chi(s) = (sqrt(D)/pi)^(1-2s) * Gamma(1-s) / Gamma(s), evaluated entirely
// in the log domain. |chi(1/2+it)| = 1 on the critical line.
Complex chi_factor(Complex s, double discriminant);

// Upper incomplete gamma Gamma(s, x) for x > 0 and |Im s| <= 40 (documented
// accuracy envelope; beyond it the routine raises a domain error rather than
// losing precision silently). Lentz continued fraction for
// x >= max(1, |s|), otherwise Gamma(s) minus the lower-gamma Kummer series.
Complex upper_incomplete_gamma(Complex s, double x);

// Euler-Maclaurin evaluation with cutoff N = max(30, ceil(1.5(|Im s|+10)))
// and 12 Bernoulli correction terms; target relative accuracy 1e-9.
// Requires |s - 1| > 1e-6 and |Im s| <= 1e5.
Complex riemann_zeta(Complex s);
Complex hurwitz_zeta(Complex s, double a);  // a in (0, 1]

// L(s, chi_1) for the quadratic character mod 4, entire:
// 4^(-s) * (zeta(s, 1/4) - zeta(s, 3/4)) with the hurwitz pole parts
// combined analytically so s = 1 needs no special handling.
Complex dirichlet_L_chi4(Complex s);

namespace detail {

// Euler-Maclaurin cores with explicit cutoff and correction order,
// exposed for the doubling self-consistency checks.
Complex hurwitz_zeta_em(Complex s, double a, int cutoff, int order);
Complex dirichlet_L_chi4_em(Complex s, int cutoff, int order);
int em_default_cutoff(Complex s);

} // namespace detail

} // namespace critline
