#pragma once

// Test-only oracles, independent of the library's evaluation paths.

#include "critline/forms.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace oracles {

// Deterministic generator (SplitMix64).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

// Random positive-definite form with eigenvalues in [lo, hi]: G = R^T D R
// for a random rotation R, symmetrized exactly.
critline::GramForm random_pd_form(Rng& rng, int m, double lo = 0.5, double hi = 4.0);

// Random unimodular integer matrix built from elementary operations; the
// exact inverse is built alongside it.
struct UnimodularPair {
    std::vector<std::int64_t> u;
    std::vector<std::int64_t> u_inv;
};
UnimodularPair random_unimodular(Rng& rng, int m, int n_ops = 6);

// Brute-force multiset of values {Q(v) : v != 0, Q(v) <= cutoff} by box scan.
// lambda_min_hint, when positive, is a known lower bound on the smallest
// Gram eigenvalue (tightens the scan box); otherwise Gershgorin is used.
std::vector<double> brute_force_values(const critline::GramForm& q, double cutoff,
                                       double lambda_min_hint = 0.0);

// Brute-force #{v : ||v|| <= A, |Q(v)| < B} over the box (origin included).
std::int64_t brute_force_window_count(const critline::GramForm& q, double a, double b);

// Brute-force count of the separate-norm difference region
// {(u,v) : ||u|| <= A, ||v|| <= A, |Q(u) - Q(v)| < B}, origin pair included.
std::int64_t brute_force_separate_norm_count(const critline::GramForm& q_pd, double a, double b);

// Sum-of-divisors; r4(n) = 8 sigma(n) - 32 sigma(n/4).
std::int64_t sigma_divisors(std::int64_t n);
std::int64_t r4(std::int64_t n);

// Cohen-Villegas-Zagier acceleration of sum_{k>=0} (-1)^k a(k).
double alternating_sum(const std::vector<double>& a);

} // namespace oracles

namespace oracles {

inline critline::GramForm random_pd_form(Rng& rng, int m, double lo, double hi) {
    // Random rotation as a product of Givens rotations.
    std::vector<double> r(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) r[static_cast<size_t>(i) * m + i] = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double th = rng.uniform(0.0, 6.283185307179586);
            const double c = std::cos(th), s = std::sin(th);
            for (int k = 0; k < m; ++k) {
                const double a = r[static_cast<size_t>(i) * m + k];
                const double b = r[static_cast<size_t>(j) * m + k];
                r[static_cast<size_t>(i) * m + k] = c * a - s * b;
                r[static_cast<size_t>(j) * m + k] = s * a + c * b;
            }
        }
    std::vector<double> eig(static_cast<size_t>(m));
    for (auto& e : eig) e = rng.uniform(lo, hi);
    std::vector<double> g(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double sum = 0.0;
            for (int k = 0; k < m; ++k)
                sum += r[static_cast<size_t>(k) * m + i] * eig[static_cast<size_t>(k)] *
                       r[static_cast<size_t>(k) * m + j];
            g[static_cast<size_t>(i) * m + j] = sum;
            g[static_cast<size_t>(j) * m + i] = sum;
        }
    return critline::GramForm(m, std::move(g), critline::Definiteness::positive_definite);
}

inline UnimodularPair random_unimodular(Rng& rng, int m, int n_ops) {
    UnimodularPair p;
    p.u.assign(static_cast<size_t>(m) * m, 0);
    p.u_inv.assign(static_cast<size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i) {
        p.u[static_cast<size_t>(i) * m + i] = 1;
        p.u_inv[static_cast<size_t>(i) * m + i] = 1;
    }
    auto at = [m](std::vector<std::int64_t>& a, int i, int j) -> std::int64_t& {
        return a[static_cast<size_t>(i) * m + j];
    };
    for (int op = 0; op < n_ops; ++op) {
        const int i = static_cast<int>(rng.integer(0, m - 1));
        int j = static_cast<int>(rng.integer(0, m - 2));
        if (j >= i) ++j;
        const std::int64_t c = rng.integer(-2, 2);
        // U -> U * E where E adds c * col_i to col_j; U^{-1} -> E^{-1} * U^{-1}.
        for (int k = 0; k < m; ++k) at(p.u, k, j) += c * at(p.u, k, i);
        for (int k = 0; k < m; ++k) at(p.u_inv, i, k) -= c * at(p.u_inv, j, k);
    }
    return p;
}

inline std::vector<double> brute_force_values(const critline::GramForm& q, double cutoff,
                                              double lambda_min_hint) {
    const int m = q.dim();
    double lam = lambda_min_hint;
    if (!(lam > 0)) {
        double min_diag = q.at(0, 0);
        for (int i = 1; i < m; ++i) min_diag = std::min(min_diag, q.at(i, i));
        lam = min_diag;
        for (int i = 0; i < m; ++i) {
            double row = q.at(i, i);
            for (int j = 0; j < m; ++j)
                if (j != i) row -= std::fabs(q.at(i, j));
            lam = std::min(lam, row);
        }
        if (!(lam > 0)) lam = 1e-3;
    }
    const std::int64_t box = static_cast<std::int64_t>(std::ceil(std::sqrt(cutoff / lam))) + 1;
    std::vector<double> vals;
    std::vector<std::int64_t> v(static_cast<size_t>(m), -box);
    for (;;) {
        bool origin = true;
        for (auto c : v)
            if (c != 0) origin = false;
        if (!origin) {
            const double val = critline::evaluate(q, v);
            if (val > 0.0 && val <= cutoff) vals.push_back(val);
        }
        int level = 0;
        while (level < m && ++v[static_cast<size_t>(level)] > box) {
            v[static_cast<size_t>(level)] = -box;
            ++level;
        }
        if (level == m) break;
    }
    return vals;
}

inline std::int64_t brute_force_window_count(const critline::GramForm& q, double a, double b) {
    const int m = q.dim();
    const std::int64_t box = static_cast<std::int64_t>(std::floor(a));
    std::int64_t count = 0;
    std::vector<std::int64_t> v(static_cast<size_t>(m), -box);
    const double a2 = a * a;
    for (;;) {
        double norm2 = 0;
        for (auto c : v) norm2 += static_cast<double>(c) * c;
        if (norm2 <= a2 && std::fabs(critline::evaluate(q, v)) < b) ++count;
        int level = 0;
        while (level < m && ++v[static_cast<size_t>(level)] > box) {
            v[static_cast<size_t>(level)] = -box;
            ++level;
        }
        if (level == m) break;
    }
    return count;
}

inline std::int64_t brute_force_separate_norm_count(const critline::GramForm& q_pd, double a,
                                                    double b) {
    const int m = q_pd.dim();
    const std::int64_t box = static_cast<std::int64_t>(std::floor(a));
    const double a2 = a * a;
    std::vector<double> vals;  // Q(u) over ||u|| <= A including u = 0
    std::vector<std::int64_t> v(static_cast<size_t>(m), -box);
    for (;;) {
        double norm2 = 0;
        for (auto c : v) norm2 += static_cast<double>(c) * c;
        if (norm2 <= a2) vals.push_back(critline::evaluate(q_pd, v));
        int level = 0;
        while (level < m && ++v[static_cast<size_t>(level)] > box) {
            v[static_cast<size_t>(level)] = -box;
            ++level;
        }
        if (level == m) break;
    }
    std::int64_t count = 0;
    for (double x : vals)
        for (double y : vals)
            if (std::fabs(x - y) < b) ++count;
    return count;
}

inline std::int64_t sigma_divisors(std::int64_t n) {
    std::int64_t s = 0;
    for (std::int64_t d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            s += d;
            if (d != n / d) s += n / d;
        }
    return s;
}

inline std::int64_t r4(std::int64_t n) {
    if (n <= 0) return 0;
    std::int64_t s = 8 * sigma_divisors(n);
    if (n % 4 == 0) s -= 32 * sigma_divisors(n / 4);
    return s;
}

inline double alternating_sum(const std::vector<double>& a) {
    const int n = static_cast<int>(a.size());
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d, s = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        s += c * a[static_cast<size_t>(k)];
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    return s / d;
}

} // namespace oracles
