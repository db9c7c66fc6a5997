#pragma once

// Minimal complex __float128 kernel for the theta-series Epstein evaluator.
// The incomplete-gamma expansion of the completed zeta function cancels by a
// factor ~ e^{pi |t| / 2} before the division by Gamma(s); double precision
// runs out near |t| = 16, so the bracket is accumulated in quad precision.

#include <quadmath.h>

#include <complex>

namespace critline::qd {

using Real = __float128;

struct C {
    Real re = 0;
    Real im = 0;
};

inline C make(Real re, Real im = 0) { return {re, im}; }
inline C from_std(std::complex<double> z) { return {static_cast<Real>(z.real()), static_cast<Real>(z.imag())}; }
inline std::complex<double> to_std(C z) {
    return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

inline C operator+(C a, C b) { return {a.re + b.re, a.im + b.im}; }
inline C operator-(C a, C b) { return {a.re - b.re, a.im - b.im}; }
inline C operator-(C a) { return {-a.re, -a.im}; }
inline C operator*(C a, C b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline C operator/(C a, C b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline C operator+(C a, Real b) { return {a.re + b, a.im}; }
inline C operator-(C a, Real b) { return {a.re - b, a.im}; }
inline C operator-(Real a, C b) { return {a - b.re, -b.im}; }
inline C operator*(Real a, C b) { return {a * b.re, a * b.im}; }
inline C operator*(C a, Real b) { return {a.re * b, a.im * b}; }
inline C operator/(C a, Real b) { return {a.re / b, a.im / b}; }
inline C operator/(Real a, C b) { return make(a) / b; }
inline C& operator+=(C& a, C b) { a = a + b; return a; }

inline Real abs(C a) { return hypotq(a.re, a.im); }
inline C exp(C a) {
    const Real e = expq(a.re);
    return {e * cosq(a.im), e * sinq(a.im)};
}
inline C log(C a) { return {logq(abs(a)), atan2q(a.im, a.re)}; }

// log Gamma via upward recursion to Re >= 34 and a 16-term Stirling series.
// The caller keeps arguments away from the non-positive integers.
inline C log_gamma(C s) {
    // B_{2j} / (2j (2j-1)) as exact rationals, j = 1..16.
    static const long long num[16] = {
        1, -1, 1, -1, 1, -691, 1, -3617, 43867, -174611,
        854513, -236364091, 8553103, -23749461029LL, 8615841276005LL, -7709321041217LL};
    static const long long den[16] = {
        12, 360, 1260, 1680, 1188, 360360, 156, 122400, 244188, 125400,
        5796, 1506960, 93960, 2418179400LL, 9225988926LL, 78090777600LL};
    C shift = make(0);
    C w = s;
    while (w.re < 34) {
        shift += log(w);
        w = w + static_cast<Real>(1);
    }
    const Real half_log_two_pi = logq(2 * M_PIq) / 2;
    C result = (w - static_cast<Real>(0.5)) * log(w) - w + make(half_log_two_pi);
    const C w2 = w * w;
    C wp = w;
    for (int j = 0; j < 16; ++j) {
        result += (static_cast<Real>(num[j]) / static_cast<Real>(den[j])) / wp;
        wp = wp * w2;
    }
    return result - shift;
}

inline C incgamma_continued_fraction(C s, Real x) {
    const Real tiny = static_cast<Real>(1e-300);
    C b = make(x + 1) - s;
    C c = make(1 / tiny);
    C d = make(1) / b;
    C h = d;
    for (int i = 1; i <= 4000; ++i) {
        const C an = -static_cast<Real>(i) * (make(static_cast<Real>(i)) - s);
        b += make(2);
        d = an * d + b;
        if (abs(d) < tiny) d = make(tiny);
        c = b + an / c;
        if (abs(c) < tiny) c = make(tiny);
        d = make(1) / d;
        const C delta = d * c;
        h = h * delta;
        if (abs(delta - static_cast<Real>(1)) < static_cast<Real>(1e-35)) break;
    }
    return exp(make(-x) + s * logq(x)) * h;
}

// E_1(x) = Gamma(0, x) for 0 < x <= 5 by the classical series.
inline Real exp_integral_e1(Real x) {
    static const Real euler_gamma =
        strtoflt128("0.57721566490153286060651209008240243104215933593992", nullptr);
    Real sum = 0, term = 1;
    for (int k = 1; k <= 300; ++k) {
        term *= x / static_cast<Real>(k);
        const Real add = (k % 2 == 1 ? term : -term) / static_cast<Real>(k);
        sum += add;
        if (k > 5 && fabsq(add) < static_cast<Real>(1e-40) * fabsq(sum)) break;
    }
    return -euler_gamma - logq(x) + sum;
}

// Gamma(-n, x) by downward recurrence from Gamma(0, x) = E_1(x).
inline C incgamma_nonpositive_integer(long long n, Real x) {
    C g = make(exp_integral_e1(x));
    Real w = 0;
    for (long long k = 0; k < n; ++k) {
        w -= 1;
        g = (g - make(expq(w * logq(x) - x))) / w;
    }
    return g;
}

// Upper incomplete gamma for x > 0: Lentz continued fraction when
// x >= max(1, |s|); the E_1 downward recurrence at (or within 1e-12 of)
// non-positive integer orders; otherwise Gamma(s) minus the positive-term
// Kummer series for the lower gamma (with an upward shift when Re s <= 1/4).
inline C upper_incomplete_gamma(C s, Real x) {
    if (x >= std::max<Real>(1, abs(s))) return incgamma_continued_fraction(s, x);

    const long long n_int = llroundq(-s.re);
    if (n_int >= 0 && hypotq(s.re + static_cast<Real>(n_int), s.im) < static_cast<Real>(1e-12)) {
        if (x <= 5) return incgamma_nonpositive_integer(n_int, x);
        return incgamma_continued_fraction(make(-static_cast<Real>(n_int)), x);
    }

    int k = 0;
    C w = s;
    while (w.re <= 0.25) {
        w = w + static_cast<Real>(1);
        ++k;
    }
    C term = make(1) / w;
    C sum = term;
    for (int n = 1; n <= 100000; ++n) {
        term = term * (x / (w + static_cast<Real>(n)));
        sum += term;
        if (abs(term) < static_cast<Real>(1e-36) * abs(sum)) break;
    }
    const C lower = exp(w * logq(x) - make(x)) * sum;
    C g = exp(log_gamma(w)) - lower;
    for (int i = 0; i < k; ++i) {
        w = w - static_cast<Real>(1);
        g = (g - exp(w * logq(x) - make(x))) / w;
    }
    return g;
}

} // namespace critline::qd
