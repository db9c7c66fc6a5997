#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "critline/eisenstein.hpp"
#include "critline/epstein.hpp"
#include "critline/forms.hpp"

namespace critline {

struct MeanSquareReport {
    std::string kind;         // "epstein" | "eisenstein"
    double T = 0.0;
    std::string window;       // "[T,2T]" | "[-T,T]"
    double integral = 0.0;
    double step = 0.0;
    std::string evaluator;
    std::int64_t samples = 0;          // floor(window length / step) + 1
    std::int64_t shifted_samples = 0;  // zeta-zero guard hits
    bool has_argmax = false;
    double argmax_x1 = 0.0, argmax_x2 = 0.0, argmax_y = 0.0;
};

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0;
    std::vector<std::pair<double, double>> points;  // the (log X, log Y) pairs used
};

// Trapezoidal integral of |Z_Q(1/2+it)|^2 over [T, 2T] on the AFE path.
// Samples ascend in t; evaluation parallelizes over samples but the
// reduction is a fixed sequential pass, so the result is bit-identical for
// any thread count. Requires T >= 64, step <= 1/8, and value lists covering
// X(2T) (and X(2T)/D for the dual).
MeanSquareReport mean_square_epstein(const GramForm& q, double T, double step,
                                     const ValueList& primal, const ValueList& dual_list,
                                     int threads = 0);
// Convenience overload that enumerates the lists.
MeanSquareReport mean_square_epstein(const GramForm& q, double T, double step, int threads = 0);

// 2 * integral_0^T |E(1/2+it, z)|^2 dt on the modular surface (the [-T, T]
// window by even symmetry of the integrand). AFE path for t >= 1, theta
// path for 0 < t < 1, integrand 0 at t = 0 (E(1/2, z) = 0). Samples whose
// zeta(1+2it) falls below the 1e-8 guard shift by +step/7 and are counted;
// more than 1% shifted samples is an error.
MeanSquareReport mean_square_eisenstein(Lattice lat, const HyperbolicPoint& z, double T,
                                        double step, int threads = 0);

// One sample pass up to max(T_list), reporting the [-T, T] integral at every
// ladder point (each T must be a multiple of step).
std::vector<MeanSquareReport> mean_square_eisenstein_ladder(Lattice lat, const HyperbolicPoint& z,
                                                            std::span<const double> t_ladder,
                                                            double step, int threads = 0);

// Least-squares line through (log X, log Y).
ExponentFit fit_exponent(std::span<const std::pair<double, double>> points);

// W(T) = max over a 21-point grid in [T, T+10] of |E(1+it, j)| via the
// Picard closed form; returns the fit of log W against log T.
ExponentFit pointwise_picard_growth(std::span<const double> t_list);

// Maximum mean-square report over a grid of points, argmax recorded.
MeanSquareReport sup_over_grid(Lattice lat, std::span<const HyperbolicPoint> grid, double T,
                               double step, int threads = 0);

namespace detail {
// Zeta-zero guard: returns the (possibly shifted) sample height and sets
// `shifted`. Deterministic: the decision depends only on t and step.
double guarded_height(double t, double step, bool& shifted);
} // namespace detail

} // namespace critline
