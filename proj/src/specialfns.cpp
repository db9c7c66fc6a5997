#include "critline/specialfns.hpp"

#include "critline/kahan.hpp"

#include <cmath>
#include <numbers>

namespace critline {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogTwoPiHalf = 0.91893853320467274178;  // log(2*pi)/2

// B_{2j} / (2j (2j-1)) for the Stirling series, j = 1..12.
constexpr double kStirling[12] = {
    8.3333333333333333333e-02,   // 1/12
    -2.7777777777777777778e-03,  // -1/360
    7.9365079365079365079e-04,   // 1/1260
    -5.9523809523809523810e-04,  // -1/1680
    8.4175084175084175084e-04,   // 1/1188
    -1.9175269175269175269e-03,  // -691/360360
    6.4102564102564102564e-03,   // 1/156
    -2.9550653594771241830e-02,  // -3617/122400
    1.7964437236883057316e-01,   // 43867/244188
    -1.3924322169059011164e+00,  // -174611/125400
    1.3402864044168391994e+01,   // 77683/5796
    -1.5684828462600201731e+02,  // -236364091/1506960
};

// B_{2j} / (2j)! for Euler-Maclaurin corrections, j = 1..12.
constexpr double kEmCoeff[12] = {
    8.3333333333333333333e-02,   // 1/12
    -1.3888888888888888889e-03,  // -1/720
    3.3068783068783068783e-05,   // 1/30240
    -8.2671957671957671958e-07,  // -1/1209600
    2.0876756987868098979e-08,   // 1/47900160
    -5.2841901386874931848e-10,
    1.3382536530684678833e-11,
    -3.3896802963225828668e-13,
    8.5860620562778445641e-15,
    -2.1748686985580618730e-16,
    5.5090028283602295152e-18,
    -1.3954464685812523341e-19,
};

bool near_nonpositive_integer(Complex s, double tol) {
    const double k = std::round(s.real());
    if (k > 0.5) return false;
    return std::abs(s - Complex(k, 0.0)) <= tol;
}

// Stirling series, valid for Re(w) >= 10.
Complex stirling_log_gamma(Complex w) {
    Complex result = (w - 0.5) * std::log(w) - w + kLogTwoPiHalf;
    const Complex w2 = w * w;
    Complex wp = w;
    for (double c : kStirling) {
        result += c / wp;
        wp *= w2;
    }
    return result;
}

} // namespace

Complex log_gamma(Complex s) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw invalid_input("log_gamma: argument must be finite");
    if (near_nonpositive_integer(s, 1e-8))
        throw numeric_domain_error("log_gamma: argument too close to a pole");
    Complex shift(0.0, 0.0);
    Complex w = s;
    while (w.real() < 10.0) {
        shift += std::log(w);
        w += 1.0;
    }
    return stirling_log_gamma(w) - shift;
}

Complex chi_factor(Complex s, double discriminant) {
    if (!(discriminant > 0.0))
        throw invalid_input("chi_factor: discriminant must be positive");
    if (near_nonpositive_integer(s, 1e-8) || near_nonpositive_integer(1.0 - s, 1e-8))
        throw numeric_domain_error("chi_factor: s or 1-s too close to a gamma pole");
    Complex gamma_diff;
    if (s.real() == 0.5) {
        // On the critical line 1 - s = conj(s), so the log-gamma difference
        // is exactly -2i Im(log Gamma(s)); computing it that way keeps
        // |chi| = 1 to machine precision at large heights.
        gamma_diff = Complex(0.0, -2.0 * log_gamma(s).imag());
    } else {
        gamma_diff = log_gamma(1.0 - s) - log_gamma(s);
    }
    const Complex exponent = (1.0 - 2.0 * s) * std::log(std::sqrt(discriminant) / kPi) + gamma_diff;
    return std::exp(exponent);
}

namespace {

// Modified Lentz evaluation of the continued fraction
//   Gamma(s,x) = e^{-x} x^s / (x+1-s - 1(1-s)/(x+3-s - 2(2-s)/(...)))
Complex incgamma_cf(Complex s, double x) {
    const double tiny = 1e-290;
    Complex b = x + 1.0 - s;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i <= 2000; ++i) {
        const Complex an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const Complex delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + s * std::log(x)) * h;
}

// E_1(x) = Gamma(0, x) by the classical series, for 0 < x <= 5.
double exp_integral_e1(double x) {
    constexpr double euler_gamma = 0.57721566490153286061;
    double sum = 0.0, term = 1.0;
    for (int k = 1; k <= 200; ++k) {
        term *= x / k;
        const double add = (k % 2 == 1 ? term : -term) / k;
        sum += add;
        if (k > 5 && std::fabs(add) < 1e-18 * std::fabs(sum)) break;
    }
    return -euler_gamma - std::log(x) + sum;
}

} // namespace

Complex upper_incomplete_gamma(Complex s, double x) {
    if (!(x > 0.0))
        throw invalid_input("upper_incomplete_gamma: x must be positive");
    if (std::fabs(s.imag()) > 40.0)
        throw numeric_domain_error(
            "upper_incomplete_gamma: |Im s| > 40 exceeds the accuracy envelope");

    if (x >= std::max(1.0, std::abs(s))) return incgamma_cf(s, x);

    // At (or within 1e-8 of) a non-positive integer order the Kummer route
    // would divide by Gamma-pole residues; recur down from Gamma(0,x) = E_1(x).
    const long long n_int = std::llround(-s.real());
    if (n_int >= 0 && std::abs(s + static_cast<double>(n_int)) < 1e-8) {
        if (x > 5.0) return incgamma_cf(Complex(-static_cast<double>(n_int), 0.0), x);
        Complex g(exp_integral_e1(x), 0.0);
        double w = 0.0;
        for (long long k = 0; k < n_int; ++k) {
            w -= 1.0;
            g = (g - std::exp(w * std::log(x) - x)) / w;
        }
        return g;
    }

    // Gamma(s,x) = Gamma(s) - gamma(s,x) with the lower gamma from the
    // everywhere-positive Kummer form
    //   gamma(s,x) = x^s e^{-x} sum_n x^n / (s (s+1) ... (s+n)),
    // stepping up to Re(w) > 0 first and recurring back down.
    int k = 0;
    Complex w = s;
    while (w.real() <= 0.25) {
        w += 1.0;
        ++k;
    }
    Complex term = 1.0 / w;
    Complex sum = term;
    for (int n = 1; n <= 10000; ++n) {
        term *= x / (w + static_cast<double>(n));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    const Complex lower = std::exp(w * std::log(x) - x) * sum;
    Complex g = std::exp(log_gamma(w)) - lower;
    // Gamma(w-1, x) = (Gamma(w, x) - x^{w-1} e^{-x}) / (w - 1)
    for (int i = 0; i < k; ++i) {
        w -= 1.0;
        if (std::abs(w) < 1e-10)
            throw numeric_domain_error(
                "upper_incomplete_gamma: s too close to a non-positive integer for x < max(1, |s|)");
        g = (g - std::exp(w * std::log(x) - x)) / w;
    }
    return g;
}

namespace detail {

int em_default_cutoff(Complex s) {
    return std::max(30, static_cast<int>(std::ceil(1.5 * (std::fabs(s.imag()) + 10.0))));
}

Complex hurwitz_zeta_em(Complex s, double a, int cutoff, int order) {
    const int n_max = cutoff;
    KahanComplexSum acc;
    for (int n = 0; n < n_max; ++n)
        acc.add(std::exp(-s * std::log(static_cast<double>(n) + a)));
    Complex sum = acc.value();
    const double base = static_cast<double>(n_max) + a;
    const double logb = std::log(base);
    sum += std::exp((1.0 - s) * logb) / (s - 1.0);
    sum += 0.5 * std::exp(-s * logb);
    // Bernoulli corrections: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * base^{-s-2j+1}.
    Complex poch = s;
    Complex power = std::exp((-s - 1.0) * logb);
    const double inv_b2 = 1.0 / (base * base);
    for (int j = 1; j <= order; ++j) {
        sum += kEmCoeff[j - 1] * poch * power;
        poch *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
        power *= inv_b2;
    }
    return sum;
}

Complex dirichlet_L_chi4_em(Complex s, int cutoff, int order) {
    // One pass over zeta(s,1/4) - zeta(s,3/4) with the two pole terms
    // combined into a difference quotient that stays finite at s = 1.
    const int n_max = cutoff;
    Complex sum = 0.0;
    for (int n = 0; n < n_max; ++n) {
        sum += std::exp(-s * std::log(n + 0.25)) - std::exp(-s * std::log(n + 0.75));
    }
    const double b1 = n_max + 0.25, b2 = n_max + 0.75;
    const double l1 = std::log(b1), l2 = std::log(b2);
    // ((b1)^{1-s} - (b2)^{1-s}) / (s-1) = -b2^{1-s} * (l1-l2) * phi((1-s)(l1-l2)),
    // phi(w) = (e^w - 1)/w.
    const Complex w = (1.0 - s) * (l1 - l2);
    Complex phi;
    if (std::abs(w) < 1e-4) {
        phi = 1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0));
    } else {
        phi = (std::exp(w) - 1.0) / w;
    }
    sum += -std::exp((1.0 - s) * l2) * (l1 - l2) * phi;
    sum += 0.5 * (std::exp(-s * l1) - std::exp(-s * l2));
    Complex poch = s;
    Complex p1 = std::exp((-s - 1.0) * l1), p2 = std::exp((-s - 1.0) * l2);
    for (int j = 1; j <= order; ++j) {
        sum += kEmCoeff[j - 1] * poch * (p1 - p2);
        poch *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
        p1 /= b1 * b1;
        p2 /= b2 * b2;
    }
    return std::exp(-s * std::log(4.0)) * sum;
}

} // namespace detail

Complex riemann_zeta(Complex s) {
    if (std::abs(s - 1.0) <= 1e-6)
        throw numeric_domain_error("riemann_zeta: s too close to the pole at 1");
    if (std::fabs(s.imag()) > 1e5)
        throw numeric_domain_error("riemann_zeta: |Im s| exceeds the 1e5 height cap");
    return detail::hurwitz_zeta_em(s, 1.0, detail::em_default_cutoff(s), 12);
}

Complex hurwitz_zeta(Complex s, double a) {
    if (!(a > 0.0) || a > 1.0)
        throw invalid_input("hurwitz_zeta: a must lie in (0, 1]");
    if (std::abs(s - 1.0) <= 1e-6)
        throw numeric_domain_error("hurwitz_zeta: s too close to the pole at 1");
    if (std::fabs(s.imag()) > 1e5)
        throw numeric_domain_error("hurwitz_zeta: |Im s| exceeds the 1e5 height cap");
    return detail::hurwitz_zeta_em(s, a, detail::em_default_cutoff(s), 12);
}

Complex dirichlet_L_chi4(Complex s) {
    if (std::fabs(s.imag()) > 1e5)
        throw numeric_domain_error("dirichlet_L_chi4: |Im s| exceeds the 1e5 height cap");
    return detail::dirichlet_L_chi4_em(s, detail::em_default_cutoff(s), 12);
}

} // namespace critline
