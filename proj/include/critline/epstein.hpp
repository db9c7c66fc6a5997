#pragma once

#include <complex>

#include "critline/forms.hpp"
#include "critline/specialfns.hpp"
#include "critline/valuelist.hpp"

namespace critline {

enum class EpsteinMethod { direct, theta, afe, auto_route };

// Z_Q(s) = sum_{v != 0} Q(v)^{-s} by lattice summation for
// Re s >= m/2 + 1/4. The partial sum is completed with the
// integral-comparison smooth tail
//     (V_m (m/2) / sqrt(D)) * X^{m/2-s} / (s - m/2)
// and the matching boundary-count correction, then the cutoff is doubled
// until consecutive values agree within eps/2, so the returned value has
// absolute error < 2*eps. (A raw truncation with the plain tail bound
// c_m D^{-1/2} X^{m/2-sigma} sigma/(sigma-m/2) would need X beyond any
// budget near the abscissa; the corrected form converges at the lattice
// fluctuation rate X^{e_m - sigma}, e_2 = 1/3, e_3 = 0.7, e_m = m/2-1.)
Complex eval_direct(const GramForm& q, Complex s, double eps = 1e-6, int threads = 0);

// Z_Q(s) via the incomplete-gamma continuation
//   pi^{-s} Gamma(s) Z_Q(s) = -1/s - D^{-1/2}/(m/2-s)
//     + sum_{v!=0} (pi Q(v))^{-s}   Gamma(s,     pi Q(v))
//     + D^{-1/2} sum_{v!=0} (pi Q_-(v))^{s-m/2} Gamma(m/2-s, pi Q_-(v)),
// truncated at Q(v), Q_-(v) <= max(20, 2|Im s|). Valid for |Im s| <= 30
// with |s| >= 1e-3 and |m/2 - s| >= 1e-3; the bracket is accumulated in
// quad precision because it cancels by ~e^{pi|t|/2} against 1/Gamma(s).
// Absolute accuracy ~1e-8 or better across the envelope.
Complex eval_theta(const GramForm& q, Complex s);

// The completed function Lambda_Q(s) = pi^{-s} Gamma(s) Z_Q(s), from the
// same expansion (no division by Gamma).
Complex theta_completed(const GramForm& q, Complex s);

// AFE truncation length X(t) = |t| sqrt(D) / pi.
double afe_cutoff(double t, double discr);
// Cutoff the *inverse-dual* value list must reach so that the
// discriminant-normalized dual values D*mu cover X(t).
double afe_dual_cutoff(double t, double discr);

// Approximate-functional-equation main terms at s = 1/2 + it for binary
// positive-definite forms:
//   S1 + chi(s) S2,   S1 = sum_{lambda_n <= X} a_n lambda_n^{-s},
//   S2 = sum_{mu*_n <= X} b_n (mu*_n)^{-(1-s)},
// where mu*_n = D * mu_n are the values of the discriminant-normalized
// dual (the inverse dual rescaled back to discriminant D, which is what
// makes chi(s) the exact root factor). Values within 1e-9 relative of X
// are tied inward. Sums run in ascending order with compensated summation.
// The omitted error is O_D(log |t|); the empirical constant is measured by
// the acceptance suite, not assumed.
Complex eval_afe(const GramForm& q, double t, const ValueList& primal,
                 const ValueList& dual_list);

// Convenience overload that enumerates both lists on the fly.
Complex eval_afe(const GramForm& q, double t);

// Residue of Z_Q at s = m/2: pi^{m/2} / (Gamma(m/2) sqrt(D)).
double residue_at_pole(const GramForm& q);

// |Lambda_Q(s) - D^{-1/2} Lambda_{Q_-}(m/2 - s)| / (1 + |Lambda_Q(s)|).
double functional_residual(const GramForm& q, Complex s);

// Validity-domain router: Re s > m/2 + 1/4 -> direct; else |Im s| <= 30 ->
// theta; else (m = 2, Re s = 1/2) -> AFE; anything else is a domain error.
Complex eval_auto(const GramForm& q, Complex s, double eps = 1e-6, int threads = 0);

// Dispatch by explicit method (auto_route == eval_auto).
Complex eval_epstein(const GramForm& q, Complex s, EpsteinMethod method,
                     double eps = 1e-6, int threads = 0);

} // namespace critline
