#include "critline/epstein.hpp"

#include "critline/enumerate_detail.hpp"
#include "critline/kahan.hpp"
#include "critline/parallel.hpp"
#include "quadcomplex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace critline {

namespace {

constexpr double kPi = std::numbers::pi;

double unit_ball_volume(int m) {
    return std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

// Empirical lattice-count fluctuation exponents (value-cutoff scale).
double fluctuation_exponent(int m) {
    if (m == 2) return 1.0 / 3.0;
    if (m == 3) return 0.7;
    return 0.5 * m - 1.0;
}

GramForm require_positive_definite(const GramForm& q, const char* who) {
    GramForm qc = q.classified();
    if (!qc.is_positive_definite())
        throw invalid_input(std::string(who) + ": form must be positive-definite");
    return qc;
}

// Exact quad-precision Q(v) from the double Gram entries.
qd::Real quad_value(const std::vector<qd::Real>& gram, int m, std::span<const std::int64_t> v) {
    qd::Real sum = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            sum += gram[static_cast<size_t>(i) * m + j] * static_cast<qd::Real>(v[i]) *
                   static_cast<qd::Real>(v[j]);
    return sum;
}

// Quad Gauss-Jordan inverse and determinant of a small symmetric matrix.
void quad_inverse(const std::vector<qd::Real>& a_in, int m, std::vector<qd::Real>& inv,
                  qd::Real& det) {
    std::vector<qd::Real> a = a_in;
    inv.assign(static_cast<size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i) inv[static_cast<size_t>(i) * m + i] = 1;
    det = 1;
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (fabsq(a[static_cast<size_t>(r) * m + col]) >
                fabsq(a[static_cast<size_t>(piv) * m + col]))
                piv = r;
        if (piv != col) {
            for (int c = 0; c < m; ++c) {
                std::swap(a[static_cast<size_t>(piv) * m + c], a[static_cast<size_t>(col) * m + c]);
                std::swap(inv[static_cast<size_t>(piv) * m + c], inv[static_cast<size_t>(col) * m + c]);
            }
            det = -det;
        }
        const qd::Real p = a[static_cast<size_t>(col) * m + col];
        if (p == 0) throw numeric_domain_error("theta evaluator: singular Gram matrix");
        det = det * p;
        for (int c = 0; c < m; ++c) {
            a[static_cast<size_t>(col) * m + c] = a[static_cast<size_t>(col) * m + c] / p;
            inv[static_cast<size_t>(col) * m + c] = inv[static_cast<size_t>(col) * m + c] / p;
        }
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            const qd::Real f = a[static_cast<size_t>(r) * m + col];
            if (f == 0) continue;
            for (int c = 0; c < m; ++c) {
                a[static_cast<size_t>(r) * m + c] =
                    a[static_cast<size_t>(r) * m + c] - f * a[static_cast<size_t>(col) * m + c];
                inv[static_cast<size_t>(r) * m + c] =
                    inv[static_cast<size_t>(r) * m + c] - f * inv[static_cast<size_t>(col) * m + c];
            }
        }
    }
}

struct ThetaBracket {
    qd::C lambda;  // pi^{-s} Gamma(s) Z_Q(s)
    qd::Real det;  // quad determinant of the Gram matrix
};

ThetaBracket theta_bracket(const GramForm& q, Complex s) {
    const int m = q.dim();
    const GramForm qc = require_positive_definite(q, "eval_theta");
    if (std::fabs(s.imag()) > 30.0)
        throw numeric_domain_error("eval_theta: |Im s| > 30; switch to eval_afe");
    if (std::abs(s) < 1e-3)
        throw numeric_domain_error("eval_theta: s within 1e-3 of 0");
    if (std::abs(0.5 * m - s) < 1e-3)
        throw numeric_domain_error("eval_theta: s within 1e-3 of the pole at m/2");

    std::vector<qd::Real> gram_q(q.gram().begin(), q.gram().end());
    std::vector<qd::Real> inv_q;
    qd::Real det_q;
    quad_inverse(gram_q, m, inv_q, det_q);
    const qd::Real inv_sqrt_det = 1 / sqrtq(det_q);

    const double x_theta = std::max(20.0, 2.0 * std::fabs(s.imag()));
    const qd::C sq = qd::from_std(s);
    const qd::C s_shift = sq - static_cast<qd::Real>(0.5 * m);  // s - m/2

    qd::C sum1 = qd::make(0);
    {
        detail::StreamContext ctx = detail::make_stream_context(qc, x_theta);
        detail::stream_all(ctx, [&](std::span<const std::int64_t> v, double) {
            const qd::Real lam = quad_value(gram_q, m, v);
            const qd::Real x = M_PIq * lam;
            const qd::C term = qd::exp(-(sq * logq(x))) * qd::upper_incomplete_gamma(sq, x);
            sum1 += static_cast<qd::Real>(2) * term;
        });
    }

    qd::C sum2 = qd::make(0);
    {
        const GramForm dual_form = dual(qc);
        detail::StreamContext ctx = detail::make_stream_context(dual_form, x_theta);
        detail::stream_all(ctx, [&](std::span<const std::int64_t> v, double) {
            const qd::Real mu = quad_value(inv_q, m, v);
            const qd::Real x = M_PIq * mu;
            const qd::C term = qd::exp(s_shift * logq(x)) * qd::upper_incomplete_gamma(-s_shift, x);
            sum2 += static_cast<qd::Real>(2) * term;
        });
    }

    ThetaBracket out;
    out.lambda = -(qd::make(1) / sq) - inv_sqrt_det / (-s_shift) + sum1 + inv_sqrt_det * sum2;
    out.det = det_q;
    return out;
}

bool near_nonpositive_integer(Complex s, double tol) {
    const double k = std::round(s.real());
    if (k > 0.5) return false;
    return std::abs(s - Complex(k, 0.0)) <= tol;
}

} // namespace

Complex theta_completed(const GramForm& q, Complex s) {
    return qd::to_std(theta_bracket(q, s).lambda);
}

Complex eval_theta(const GramForm& q, Complex s) {
    if (near_nonpositive_integer(s, 1e-6))
        throw numeric_domain_error(
            "eval_theta: s too close to a non-positive integer (Gamma factor ill-conditioned)");
    const ThetaBracket b = theta_bracket(q, s);
    const qd::C factor = qd::exp(qd::from_std(s) * logq(M_PIq) - qd::log_gamma(qd::from_std(s)));
    return qd::to_std(b.lambda * factor);
}

double functional_residual(const GramForm& q, Complex s) {
    const double half_m = 0.5 * q.dim();
    const ThetaBracket b1 = theta_bracket(q, s);
    const ThetaBracket b2 = theta_bracket(dual(q), Complex(half_m, 0.0) - s);
    const qd::C diff = b1.lambda - b2.lambda / sqrtq(b1.det);
    return static_cast<double>(qd::abs(diff) / (1 + qd::abs(b1.lambda)));
}

double residue_at_pole(const GramForm& q) {
    const GramForm qc = require_positive_definite(q, "residue_at_pole");
    const double d = discriminant(qc);
    const double half_m = 0.5 * qc.dim();
    return std::pow(kPi, half_m) / (std::tgamma(half_m) * std::sqrt(d));
}

Complex eval_direct(const GramForm& q, Complex s, double eps, int threads) {
    const GramForm qc = require_positive_definite(q, "eval_direct");
    const int m = qc.dim();
    const double sigma = s.real();
    const double half_m = 0.5 * m;
    if (sigma < half_m + 0.25 - 1e-12)
        throw numeric_domain_error("eval_direct: Re s below the m/2 + 1/4 abscissa");
    if (!(eps > 0.0)) throw invalid_input("eval_direct: eps must be positive");
    eps = std::max(eps, 1e-12);

    const double det = discriminant(qc);
    const double sqrt_det = std::sqrt(det);
    const double vm = unit_ball_volume(m);
    const double e_m = fluctuation_exponent(m);

    double min_diag = qc.at(0, 0);
    for (int i = 1; i < m; ++i) min_diag = std::min(min_diag, qc.at(i, i));

    // Starting cutoff from the fluctuation model X^{e_m - sigma} / sqrt(D);
    // the doubling loop below is the accuracy control, so the model only
    // has to land in the right ballpark.
    double x = std::pow(1.0 / (sqrt_det * eps), 1.0 / (sigma - e_m));
    x = std::max({x, 32.0 * std::pow(std::fabs(det), 1.0 / m), 32.0 * min_diag, 64.0});

    auto level_value = [&](double cutoff) -> Complex {
        detail::StreamContext ctx = detail::make_stream_context(qc, cutoff);
        const std::int64_t n_leading = ctx.leading_max + 1;
        std::vector<Complex> partial(static_cast<size_t>(n_leading), Complex(0.0, 0.0));
        std::vector<std::int64_t> counts(static_cast<size_t>(n_leading), 0);
        parallel_chunks(n_leading, 1, threads, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
            for (std::int64_t k = lo; k < hi; ++k) {
                KahanComplexSum acc;
                std::int64_t n_points = 0;
                detail::stream_fixed_leading(ctx, k, [&](std::span<const std::int64_t>, double val) {
                    const double lv = std::log(val);
                    acc.add(std::polar(2.0 * std::exp(-sigma * lv), -s.imag() * lv));
                    n_points += 2;
                });
                partial[static_cast<size_t>(k)] = acc.value();
                counts[static_cast<size_t>(k)] = n_points;
            }
        });
        KahanComplexSum total;
        std::int64_t count = 0;
        for (std::int64_t k = 0; k < n_leading; ++k) {
            total.add(partial[static_cast<size_t>(k)]);
            count += counts[static_cast<size_t>(k)];
        }
        // Smooth tail plus the boundary-count correction at the accept bound.
        const double xa = ctx.accept_bound;
        const Complex smooth =
            (vm * half_m / sqrt_det) * std::exp((half_m - s) * std::log(xa)) / (s - half_m);
        const double excess = static_cast<double>(count) - vm * std::pow(xa, half_m) / sqrt_det;
        const Complex boundary = -excess * std::exp(-s * std::log(xa));
        return total.value() + smooth + boundary;
    };

    Complex prev = level_value(x);
    for (int level = 0; level < 7; ++level) {
        x *= 2.0;
        const Complex cur = level_value(x);
        if (std::abs(cur - prev) <= 0.5 * eps) return cur;
        prev = cur;
    }
    throw numeric_domain_error("eval_direct: failed to stabilize within the enumeration budget");
}

double afe_cutoff(double t, double discr) { return std::fabs(t) * std::sqrt(discr) / kPi; }

double afe_dual_cutoff(double t, double discr) { return afe_cutoff(t, discr) / discr; }

Complex eval_afe(const GramForm& q, double t, const ValueList& primal,
                 const ValueList& dual_list) {
    if (q.dim() != 2) throw invalid_input("eval_afe: form must be binary");
    if (!(std::fabs(t) >= 1.0))
        throw numeric_domain_error("eval_afe: |t| must be at least 1");
    if (primal.form_digest() != q.digest())
        throw invalid_input("eval_afe: primal value list does not match the form");
    const GramForm dual_form = dual(q.classified());
    if (dual_list.form_digest() != dual_form.digest())
        throw invalid_input("eval_afe: dual value list does not match dual(Q)");

    const double d = discriminant(q);
    const double x = afe_cutoff(t, d);
    if (primal.cutoff() < x * (1.0 - 1e-12))
        throw numeric_domain_error("eval_afe: primal value list shorter than X(t)");
    if (dual_list.cutoff() < afe_dual_cutoff(t, d) * (1.0 - 1e-12))
        throw numeric_domain_error("eval_afe: dual value list shorter than X(t)/D");

    const Complex s(0.5, t);

    const auto log_l = primal.log_lambda();
    const auto coef = primal.coeff_over_sqrt();
    const size_t n1 = primal.prefix_upto(x);
    KahanSum s1_re, s1_im;
    for (size_t i = 0; i < n1; ++i) {
        const double phase = -t * log_l[i];
        s1_re.add(coef[i] * std::cos(phase));
        s1_im.add(coef[i] * std::sin(phase));
    }

    // Dual sum over the discriminant-normalized values mu* = D * mu.
    const auto log_m = dual_list.log_lambda();
    const auto coef_m = dual_list.coeff_over_sqrt();
    const size_t n2 = dual_list.prefix_upto(x / d);
    const double log_d = std::log(d);
    const double inv_sqrt_d = 1.0 / std::sqrt(d);
    KahanSum s2_re, s2_im;
    for (size_t i = 0; i < n2; ++i) {
        const double phase = t * (log_d + log_m[i]);
        const double c = coef_m[i] * inv_sqrt_d;
        s2_re.add(c * std::cos(phase));
        s2_im.add(c * std::sin(phase));
    }

    const Complex sum1(s1_re.value(), s1_im.value());
    const Complex sum2(s2_re.value(), s2_im.value());
    return sum1 + chi_factor(s, d) * sum2;
}

Complex eval_afe(const GramForm& q, double t) {
    const GramForm qc = require_positive_definite(q, "eval_afe");
    const double d = discriminant(qc);
    const ValueList primal = enumerate_values(qc, afe_cutoff(t, d));
    const ValueList dual_list = enumerate_values(dual(qc), afe_dual_cutoff(t, d));
    return eval_afe(qc, t, primal, dual_list);
}

Complex eval_auto(const GramForm& q, Complex s, double eps, int threads) {
    const double half_m = 0.5 * q.dim();
    if (s.real() > half_m + 0.25) return eval_direct(q, s, eps, threads);
    if (std::fabs(s.imag()) <= 30.0) return eval_theta(q, s);
    if (q.dim() == 2 && std::fabs(s.real() - 0.5) < 1e-12) return eval_afe(q, s.imag());
    throw numeric_domain_error(
        "eval_auto: no evaluator covers s (need Re s > m/2+1/4, |Im s| <= 30, or m=2 with Re s = 1/2)");
}

Complex eval_epstein(const GramForm& q, Complex s, EpsteinMethod method, double eps, int threads) {
    switch (method) {
        case EpsteinMethod::direct:
            return eval_direct(q, s, eps, threads);
        case EpsteinMethod::theta:
            return eval_theta(q, s);
        case EpsteinMethod::afe:
            if (std::fabs(s.real() - 0.5) > 1e-12)
                throw numeric_domain_error("eval_epstein: AFE path requires Re s = 1/2");
            return eval_afe(q, s.imag());
        case EpsteinMethod::auto_route:
            return eval_auto(q, s, eps, threads);
    }
    throw invalid_input("eval_epstein: unknown method");
}

} // namespace critline
