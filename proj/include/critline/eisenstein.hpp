#pragma once

#include <complex>

#include "critline/epstein.hpp"
#include "critline/forms.hpp"

namespace critline {

enum class Lattice { modular, picard };

struct EisOptions {
    EpsteinMethod method = EpsteinMethod::auto_route;
    double eps = 1e-6;
    int threads = 0;
    // Optional prebuilt value lists for the AFE path (form Q_z and its dual);
    // enumerated on the fly when absent.
    const ValueList* primal = nullptr;
    const ValueList* dual_list = nullptr;
};

// E(s, z) on the modular surface via zeta(2s) E(s,z) = y^s Z_{Q_z}(s),
// Q_z = form_from_h2(z). Guards |zeta(2s)| > 1e-8. The AFE path requires
// Re s = 1/2.
Complex eis_modular(Complex s, const HyperbolicPoint& z, const EisOptions& opt = {});

// E(s, z) on the Picard 3-fold via zeta(s) L(s,chi_1) E(s,z) = y^s Z_{Q_z}(s),
// Q_z = form_from_h3(z). Guards |zeta(s) L(s,chi_1)| > 1e-8. Valid on the
// direct (Re s > 2.25) and theta (|Im s| <= 30) paths.
Complex eis_picard(Complex s, const HyperbolicPoint& z, const EisOptions& opt = {});

// Closed form at z = j: E(1+it, j) = 8 (1 - 4^{1-s}) zeta(s-1) / L(s, chi_1)
// with s = 1 + it, from the four-square Dirichlet series. Used for large-t
// pointwise growth experiments.
Complex eis_picard_special_point(double t);

struct CoprimeSum {
    Complex value;
    double tail_estimate;  // residual uncertainty after the smooth tail correction
    double cutoff;
};

// Truncated coprime-pair sum E(s,z) = sum_{(c,d) coprime} y^s / Q_z(c,d)^s,
// with integer gcd (modular) or Gaussian-integer gcd (Picard). Truncation
// at Q_z(c,d) <= cutoff, completed by the coprime-density smooth tail and
// boundary-count corrections. Requires Re s >= n + 1/2 (n = 1 modular,
// n = 2 Picard). Independent of the Epstein-identity evaluators.
CoprimeSum eis_direct_coprime(Lattice lat, Complex s, const HyperbolicPoint& z, double cutoff);

} // namespace critline
