#include "critline/sweep.hpp"

#include "critline/kahan.hpp"
#include "critline/parallel.hpp"
#include "critline/specialfns.hpp"

#include <algorithm>
#include <cmath>

namespace critline {

namespace {

// Trapezoid over samples[0..n): step * (sum - (f0 + f_{n-1})/2), reduced
// sequentially so the result does not depend on how samples were produced.
double trapezoid(std::span<const double> f, double step) {
    KahanSum acc;
    for (double v : f) acc.add(v);
    return step * (acc.value() - 0.5 * (f.front() + f.back()));
}

std::int64_t node_count(double length, double step) {
    return static_cast<std::int64_t>(std::floor(length / step + 1e-9)) + 1;
}

} // namespace

namespace detail {

double guarded_height(double t, double step, bool& shifted) {
    shifted = false;
    const Complex denom = riemann_zeta(Complex(1.0, 2.0 * t));
    if (std::abs(denom) > 1e-8) return t;
    shifted = true;
    const double t2 = t + step / 7.0;
    const Complex denom2 = riemann_zeta(Complex(1.0, 2.0 * t2));
    if (std::abs(denom2) <= 1e-8)
        throw numeric_domain_error("zeta-zero guard: shifted sample still inside the guard");
    return t2;
}

} // namespace detail

MeanSquareReport mean_square_epstein(const GramForm& q, double T, double step,
                                     const ValueList& primal, const ValueList& dual_list,
                                     int threads) {
    if (!(T >= 64.0)) throw numeric_domain_error("mean_square_epstein: T must be >= 64");
    if (!(step > 0.0) || step > 0.125 + 1e-12)
        throw invalid_input("mean_square_epstein: step must lie in (0, 1/8]");
    const GramForm qc = q.classified();
    const double d = discriminant(qc);
    if (primal.cutoff() < afe_cutoff(2.0 * T, d) * (1.0 - 1e-12) ||
        dual_list.cutoff() < afe_dual_cutoff(2.0 * T, d) * (1.0 - 1e-12))
        throw numeric_domain_error("mean_square_epstein: cached value lists do not reach X(2T)");

    const std::int64_t n = node_count(T, step);
    std::vector<double> f(static_cast<size_t>(n));
    parallel_chunks(n, 64, threads, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t k = lo; k < hi; ++k) {
            const double t = T + static_cast<double>(k) * step;
            f[static_cast<size_t>(k)] = std::norm(eval_afe(qc, t, primal, dual_list));
        }
    });

    MeanSquareReport r;
    r.kind = "epstein";
    r.T = T;
    r.window = "[T,2T]";
    r.integral = trapezoid(f, step);
    r.step = step;
    r.evaluator = "afe";
    r.samples = n;
    r.shifted_samples = 0;
    return r;
}

MeanSquareReport mean_square_epstein(const GramForm& q, double T, double step, int threads) {
    const GramForm qc = q.classified();
    const double d = discriminant(qc);
    const ValueList primal = enumerate_values(qc, afe_cutoff(2.0 * T, d) * 1.0000001);
    const ValueList dual_list = enumerate_values(dual(qc), afe_dual_cutoff(2.0 * T, d) * 1.0000001);
    return mean_square_epstein(qc, T, step, primal, dual_list, threads);
}

namespace {

struct EisSweepData {
    GramForm qz;
    ValueList primal;
    ValueList dual_list;
    double y;
};

EisSweepData make_eis_sweep_data(const HyperbolicPoint& z, double max_t) {
    GramForm qz = form_from_h2(z);
    const double d = discriminant(qz);
    ValueList primal = enumerate_values(qz, std::max(afe_cutoff(max_t, d) * 1.0000001, 1.0));
    ValueList dual_list =
        enumerate_values(dual(qz), std::max(afe_dual_cutoff(max_t, d) * 1.0000001, 1.0));
    return EisSweepData{std::move(qz), std::move(primal), std::move(dual_list), z.y()};
}

// |E(1/2+it, z)|^2 with the zeta-zero guard; 0 at t = 0 (E(1/2, z) = 0
// because zeta(2s) has its pole there).
double eis_abs2_sample(const EisSweepData& d, double t, double step, bool& shifted) {
    shifted = false;
    if (t == 0.0) return 0.0;
    const double te = detail::guarded_height(t, step, shifted);
    const Complex s(0.5, te);
    const Complex z_val = te >= 1.0 ? eval_afe(d.qz, te, d.primal, d.dual_list)
                                    : eval_theta(d.qz, s);
    const Complex denom = riemann_zeta(Complex(1.0, 2.0 * te));
    const Complex e_val = std::exp(s * std::log(d.y)) * z_val / denom;
    return std::norm(e_val);
}

void check_omega(const HyperbolicPoint& z) {
    if (z.dim() != 2)
        throw invalid_input("mean_square_eisenstein: point must lie in H^2");
    if (std::fabs(z.x1()) > 0.5 + 1e-9 || z.y() < 0.5)
        throw invalid_input(
            "mean_square_eisenstein: point outside the fundamental-domain neighborhood "
            "(need |x| <= 1/2, y >= 1/2)");
}

} // namespace

std::vector<MeanSquareReport> mean_square_eisenstein_ladder(Lattice lat, const HyperbolicPoint& z,
                                                            std::span<const double> t_ladder,
                                                            double step, int threads) {
    if (lat != Lattice::modular)
        throw numeric_domain_error(
            "mean_square_eisenstein: critical-line large-T path exists only for the modular lattice");
    check_omega(z);
    if (!(step > 0.0) || step > 0.125 + 1e-12)
        throw invalid_input("mean_square_eisenstein: step must lie in (0, 1/8]");
    if (t_ladder.empty()) throw invalid_input("mean_square_eisenstein: empty T ladder");
    std::vector<std::int64_t> ladder_idx;
    for (double T : t_ladder) {
        if (!(T > 0.0)) throw invalid_input("mean_square_eisenstein: T must be positive");
        const double k = T / step;
        if (std::fabs(k - std::llround(k)) > 1e-9)
            throw invalid_input("mean_square_eisenstein: every T must be a multiple of step");
        ladder_idx.push_back(std::llround(k));
        if (ladder_idx.size() > 1 && ladder_idx.back() <= ladder_idx[ladder_idx.size() - 2])
            throw invalid_input("mean_square_eisenstein: T ladder must ascend");
    }

    const double t_max = t_ladder.back();
    const EisSweepData data = make_eis_sweep_data(z, t_max);

    const std::int64_t n = ladder_idx.back() + 1;
    std::vector<double> f(static_cast<size_t>(n));
    std::vector<std::int64_t> shift_count(static_cast<size_t>((n + 63) / 64), 0);
    parallel_chunks(n, 64, threads, [&](std::int64_t chunk, std::int64_t lo, std::int64_t hi) {
        std::int64_t shifts = 0;
        for (std::int64_t k = lo; k < hi; ++k) {
            bool shifted = false;
            f[static_cast<size_t>(k)] =
                eis_abs2_sample(data, static_cast<double>(k) * step, step, shifted);
            if (shifted) ++shifts;
        }
        shift_count[static_cast<size_t>(chunk)] = shifts;
    });
    std::int64_t total_shifts = 0;
    for (std::int64_t c : shift_count) total_shifts += c;
    if (total_shifts * 100 > n)
        throw numeric_domain_error("mean_square_eisenstein: zeta-zero guard saturated (>1% shifted)");

    std::vector<MeanSquareReport> out;
    out.reserve(t_ladder.size());
    // Prefix trapezoids share one Kahan pass over the samples.
    KahanSum acc;
    size_t next = 0;
    for (std::int64_t k = 0; k < n && next < ladder_idx.size(); ++k) {
        acc.add(f[static_cast<size_t>(k)]);
        if (k == ladder_idx[next]) {
            MeanSquareReport r;
            r.kind = "eisenstein";
            r.T = t_ladder[next];
            r.window = "[-T,T]";
            r.integral = 2.0 * step * (acc.value() - 0.5 * (f.front() + f[static_cast<size_t>(k)]));
            r.step = step;
            r.evaluator = "afe+theta:t<1";
            r.samples = node_count(2.0 * t_ladder[next], step);
            r.shifted_samples = total_shifts;  // over the full pass; 0 in practice
            out.push_back(std::move(r));
            ++next;
        }
    }
    // Per-window shift counts for the shorter ladder entries.
    if (total_shifts > 0) {
        for (size_t j = 0; j < out.size(); ++j) {
            std::int64_t cnt = 0;
            for (std::int64_t k = 0; k <= ladder_idx[j]; ++k) {
                bool shifted = false;
                detail::guarded_height(static_cast<double>(k) * step, step, shifted);
                if (shifted) ++cnt;
            }
            out[j].shifted_samples = cnt;
        }
    }
    return out;
}

MeanSquareReport mean_square_eisenstein(Lattice lat, const HyperbolicPoint& z, double T,
                                        double step, int threads) {
    const double ladder[1] = {T};
    return mean_square_eisenstein_ladder(lat, z, ladder, step, threads)[0];
}

ExponentFit fit_exponent(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw invalid_input("fit_exponent: need at least 3 points");
    double prev_x = 0.0;
    ExponentFit fit;
    fit.points.reserve(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        const auto [x, y] = points[i];
        if (!(x > 0.0) || !(y > 0.0))
            throw invalid_input("fit_exponent: inputs must be positive");
        if (i > 0 && !(x > prev_x))
            throw invalid_input("fit_exponent: X must be strictly ascending");
        prev_x = x;
        fit.points.emplace_back(std::log(x), std::log(y));
    }
    const double n = static_cast<double>(fit.points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [lx, ly] : fit.points) {
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    for (const auto& [lx, ly] : fit.points)
        fit.max_abs_residual = std::max(fit.max_abs_residual,
                                        std::fabs(ly - (fit.slope * lx + fit.intercept)));
    return fit;
}

ExponentFit pointwise_picard_growth(std::span<const double> t_list) {
    if (t_list.size() < 4)
        throw invalid_input("pointwise_picard_growth: need at least 4 ladder points");
    for (size_t i = 0; i < t_list.size(); ++i) {
        if (!(t_list[i] > 0.0) || t_list[i] > 1e4)
            throw invalid_input("pointwise_picard_growth: T values must lie in (0, 1e4]");
        if (i > 0 && !(t_list[i] > t_list[i - 1]))
            throw invalid_input("pointwise_picard_growth: T list must ascend");
    }
    constexpr int kWindowSamples = 21;
    constexpr double kWindowWidth = 10.0;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(t_list.size());
    for (double T : t_list) {
        double w = 0.0;
        for (int j = 0; j < kWindowSamples; ++j) {
            const double t = T + kWindowWidth * j / (kWindowSamples - 1);
            w = std::max(w, std::abs(eis_picard_special_point(t)));
        }
        pts.emplace_back(T, w);
    }
    return fit_exponent(pts);
}

MeanSquareReport sup_over_grid(Lattice lat, std::span<const HyperbolicPoint> grid, double T,
                               double step, int threads) {
    if (grid.empty()) throw invalid_input("sup_over_grid: grid must be nonempty");
    MeanSquareReport best;
    bool first = true;
    for (const auto& z : grid) {
        MeanSquareReport r = mean_square_eisenstein(lat, z, T, step, threads);
        if (first || r.integral > best.integral) {
            best = std::move(r);
            best.has_argmax = true;
            best.argmax_x1 = z.x1();
            best.argmax_x2 = z.x2();
            best.argmax_y = z.y();
            first = false;
        }
    }
    return best;
}

} // namespace critline
