#include "critline/eisenstein.hpp"

#include "critline/kahan.hpp"
#include "critline/specialfns.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>

namespace critline {

namespace {

constexpr double kPi = std::numbers::pi;

Complex pow_ys(double y, Complex s) { return std::exp(s * std::log(y)); }

Complex epstein_for_point(const GramForm& qz, Complex s, const EisOptions& opt) {
    if (opt.method == EpsteinMethod::afe) {
        if (std::fabs(s.real() - 0.5) > 1e-12)
            throw numeric_domain_error("eisenstein: AFE path requires Re s = 1/2");
        if (opt.primal && opt.dual_list)
            return eval_afe(qz, s.imag(), *opt.primal, *opt.dual_list);
        return eval_afe(qz, s.imag());
    }
    return eval_epstein(qz, s, opt.method, opt.eps, opt.threads);
}

struct GaussianInt {
    std::int64_t re, im;
};

GaussianInt gaussian_remainder(GaussianInt a, GaussianInt b) {
    // a - round(a/b) * b with componentwise nearest-integer rounding.
    const double n = static_cast<double>(b.re) * b.re + static_cast<double>(b.im) * b.im;
    const double qre = (static_cast<double>(a.re) * b.re + static_cast<double>(a.im) * b.im) / n;
    const double qim = (static_cast<double>(a.im) * b.re - static_cast<double>(a.re) * b.im) / n;
    const std::int64_t cre = std::llround(qre);
    const std::int64_t cim = std::llround(qim);
    return {a.re - (cre * b.re - cim * b.im), a.im - (cre * b.im + cim * b.re)};
}

bool gaussian_coprime(GaussianInt a, GaussianInt b) {
    while (b.re != 0 || b.im != 0) {
        GaussianInt r = gaussian_remainder(a, b);
        a = b;
        b = r;
    }
    return a.re * a.re + a.im * a.im == 1;
}

double smallest_eigenvalue(const GramForm& q) {
    using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Mat g = Eigen::Map<const Mat>(q.gram().data(), q.dim(), q.dim());
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace

Complex eis_modular(Complex s, const HyperbolicPoint& z, const EisOptions& opt) {
    if (z.dim() != 2) throw invalid_input("eis_modular: point must lie in H^2");
    const GramForm qz = form_from_h2(z);
    const Complex denom = riemann_zeta(2.0 * s);
    if (std::abs(denom) <= 1e-8)
        throw numeric_domain_error("eis_modular: zeta(2s) within 1e-8 of zero");
    const Complex zval = epstein_for_point(qz, s, opt);
    return pow_ys(z.y(), s) * zval / denom;
}

Complex eis_picard(Complex s, const HyperbolicPoint& z, const EisOptions& opt) {
    if (z.dim() != 3) throw invalid_input("eis_picard: point must lie in H^3");
    if (opt.method == EpsteinMethod::afe)
        throw numeric_domain_error("eis_picard: no AFE path for the quaternary form");
    const GramForm qz = form_from_h3(z);
    const Complex denom = riemann_zeta(s) * dirichlet_L_chi4(s);
    if (std::abs(denom) <= 1e-8)
        throw numeric_domain_error("eis_picard: zeta(s) L(s,chi_1) within 1e-8 of zero");
    const Complex zval = epstein_for_point(qz, s, opt);
    return pow_ys(z.y(), s) * zval / denom;
}

Complex eis_picard_special_point(double t) {
    const Complex s(1.0, t);
    const Complex lval = dirichlet_L_chi4(s);
    if (std::abs(lval) <= 1e-8)
        throw numeric_domain_error("eis_picard_special_point: L(1+it) within 1e-8 of zero");
    const Complex factor = 1.0 - std::exp((1.0 - s) * std::log(4.0));
    return 8.0 * factor * riemann_zeta(s - 1.0) / lval;
}

CoprimeSum eis_direct_coprime(Lattice lat, Complex s, const HyperbolicPoint& z, double cutoff) {
    if (!(cutoff > 0.0)) throw invalid_input("eis_direct_coprime: cutoff must be positive");
    const double sigma = s.real();

    if (lat == Lattice::modular) {
        if (z.dim() != 2) throw invalid_input("eis_direct_coprime: point must lie in H^2");
        if (sigma < 1.5 - 1e-12)
            throw numeric_domain_error("eis_direct_coprime: modular case needs Re s >= 3/2");
        const GramForm qz = form_from_h2(z);
        const double lam_min = smallest_eigenvalue(qz);
        const double rad2 = cutoff / lam_min;
        const std::int64_t box = static_cast<std::int64_t>(std::floor(std::sqrt(rad2)));

        KahanComplexSum acc;
        std::int64_t count = 0;
        std::int64_t v[2];
        for (std::int64_t c = -box; c <= box; ++c) {
            const double rem = rad2 - static_cast<double>(c) * c;
            const std::int64_t dmax = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(rem, 0.0))));
            for (std::int64_t d = -dmax; d <= dmax; ++d) {
                if (c == 0 && d == 0) continue;
                v[0] = c;
                v[1] = d;
                const double val = evaluate(qz, v);
                if (val > cutoff) continue;
                if (std::gcd(std::llabs(c), std::llabs(d)) != 1) continue;
                const double lv = std::log(val);
                acc.add(std::polar(std::exp(-sigma * lv), -s.imag() * lv));
                ++count;
            }
        }
        // Coprime pairs have density 1/zeta(2) among all pairs; the smooth
        // tail and boundary corrections mirror the direct Epstein evaluator.
        const double dens = kPi / (std::sqrt(discriminant(qz)) * (kPi * kPi / 6.0));
        const Complex smooth = dens * std::exp((1.0 - s) * std::log(cutoff)) / (s - 1.0);
        const double excess = static_cast<double>(count) - dens * cutoff;
        const Complex boundary = -excess * std::exp(-s * std::log(cutoff));
        const Complex total = acc.value() + smooth + boundary;
        const double tail_est =
            std::pow(z.y(), sigma) * (1.0 + std::abs(s)) *
            (std::fabs(excess) + std::sqrt(cutoff)) * std::pow(cutoff, -sigma);
        return {pow_ys(z.y(), s) * total, tail_est, cutoff};
    }

    if (z.dim() != 3) throw invalid_input("eis_direct_coprime: point must lie in H^3");
    if (sigma < 2.5 - 1e-12)
        throw numeric_domain_error("eis_direct_coprime: Picard case needs Re s >= 5/2");
    const GramForm qz = form_from_h3(z);
    const double lam_min = smallest_eigenvalue(qz);
    const double rad2 = cutoff / lam_min;
    const std::int64_t box = static_cast<std::int64_t>(std::floor(std::sqrt(rad2)));

    KahanComplexSum acc;
    std::int64_t count = 0;
    std::int64_t v[4];
    for (std::int64_t c1 = -box; c1 <= box; ++c1) {
        const double r1 = rad2 - static_cast<double>(c1) * c1;
        const std::int64_t b2 = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(r1, 0.0))));
        for (std::int64_t c2 = -b2; c2 <= b2; ++c2) {
            const double r2 = r1 - static_cast<double>(c2) * c2;
            const std::int64_t b3 = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(r2, 0.0))));
            for (std::int64_t d1 = -b3; d1 <= b3; ++d1) {
                const double r3 = r2 - static_cast<double>(d1) * d1;
                const std::int64_t b4 = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(r3, 0.0))));
                for (std::int64_t d2 = -b4; d2 <= b4; ++d2) {
                    if (c1 == 0 && c2 == 0 && d1 == 0 && d2 == 0) continue;
                    v[0] = c1;
                    v[1] = c2;
                    v[2] = d1;
                    v[3] = d2;
                    const double val = evaluate(qz, v);
                    if (val > cutoff) continue;
                    if (!gaussian_coprime({c1, c2}, {d1, d2})) continue;
                    const double lv = std::log(val);
                    acc.add(std::polar(std::exp(-sigma * lv), -s.imag() * lv));
                    ++count;
                }
            }
        }
    }
    // Coprime Gaussian pairs have density 1/zeta_{Q(i)}(2) among all pairs.
    const double zk2 = (kPi * kPi / 6.0) * 0.91596559417721901505;  // zeta(2) * L(2, chi_1)
    const double dens = (kPi * kPi / 2.0) / (std::sqrt(discriminant(qz)) * zk2);
    const Complex smooth = 2.0 * dens * std::exp((2.0 - s) * std::log(cutoff)) / (s - 2.0);
    const double excess = static_cast<double>(count) - dens * cutoff * cutoff;
    const Complex boundary = -excess * std::exp(-s * std::log(cutoff));
    const Complex total = acc.value() + smooth + boundary;
    const double tail_est =
        std::pow(z.y(), sigma) * (1.0 + std::abs(s)) *
        (std::fabs(excess) + cutoff) * std::pow(cutoff, -sigma);
    return {pow_ys(z.y(), s) * total, tail_est, cutoff};
}

} // namespace critline
