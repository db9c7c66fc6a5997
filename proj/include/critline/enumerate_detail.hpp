#pragma once

// Streaming Fincke-Pohst enumeration shared by the value-list builder, the
// direct Epstein evaluator, and the theta-series evaluator. Points are
// visited as +-pair representatives: the highest-index nonzero coordinate
// is positive, so every visit stands for the pair {v, -v}.

#include <cmath>
#include <cstdint>
#include <span>

#include "critline/forms.hpp"

namespace critline::detail {

struct StreamContext {
    const GramForm* form = nullptr;
    int m = 0;
    double cutoff = 0.0;        // requested cutoff X
    double accept_bound = 0.0;  // X * (1 + 1e-9), ties inward
    double prune_bound = 0.0;   // slightly wider, absorbs partial-sum rounding
    double r[8][8] = {};        // upper-triangular Cholesky factor, G = R^T R
    std::int64_t leading_max = 0;
};

// Requires a positive-definite form; enforces the 1e9 point budget.
StreamContext make_stream_context(const GramForm& q, double cutoff);

// Visitor signature: void(std::span<const std::int64_t> v, double value).
template <class Visitor>
void stream_level(const StreamContext& c, int level, double partial,
                  const double* lin, bool nonneg, std::int64_t* v, Visitor&& visit) {
    const double rem = c.prune_bound - partial;
    if (rem < 0.0) return;
    const double rll = c.r[level][level];
    const double center = -lin[level] / rll;
    const double half = std::sqrt(rem) / rll;
    std::int64_t lo = static_cast<std::int64_t>(std::ceil(center - half - 1e-9));
    std::int64_t hi = static_cast<std::int64_t>(std::floor(center + half + 1e-9));
    if (nonneg && lo < 0) lo = 0;
    for (std::int64_t t = lo; t <= hi; ++t) {
        v[level] = t;
        const double w = rll * static_cast<double>(t) + lin[level];
        const double p2 = partial + w * w;
        if (p2 > c.prune_bound) continue;
        if (level == 0) {
            if (nonneg && t == 0) continue;  // origin
            const double val = evaluate(*c.form, std::span<const std::int64_t>(v, static_cast<size_t>(c.m)));
            if (val <= c.accept_bound && val > 0.0)
                visit(std::span<const std::int64_t>(v, static_cast<size_t>(c.m)), val);
        } else {
            double lin2[8];
            for (int i = 0; i < level; ++i) lin2[i] = lin[i] + c.r[i][level] * static_cast<double>(t);
            stream_level(c, level - 1, p2, lin2, nonneg && t == 0, v, visit);
        }
    }
}

// Enumerates all representatives whose leading (index m-1) coordinate
// equals `leading`; `leading` ranges over [0, leading_max].
template <class Visitor>
void stream_fixed_leading(const StreamContext& c, std::int64_t leading, Visitor&& visit) {
    const int top = c.m - 1;
    const double w = c.r[top][top] * static_cast<double>(leading);
    const double partial = w * w;
    if (partial > c.prune_bound) return;
    std::int64_t v[8] = {};
    v[top] = leading;
    double lin[8];
    for (int i = 0; i < top; ++i) lin[i] = c.r[i][top] * static_cast<double>(leading);
    stream_level(c, top - 1, partial, lin, leading == 0, v, visit);
}

// Single-threaded full stream in deterministic order.
template <class Visitor>
void stream_all(const StreamContext& c, Visitor&& visit) {
    for (std::int64_t k = 0; k <= c.leading_max; ++k)
        stream_fixed_leading(c, k, visit);
}

} // namespace critline::detail
