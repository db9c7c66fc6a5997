#include "critline/counting.hpp"

#include "critline/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

namespace critline {

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void fill_normalization(CountReport& r, int n) {
    const double denom = r.B * std::pow(r.A, n - 2);
    r.normalized = static_cast<double>(r.count) / denom;
    const double log_a = std::log(r.A);
    r.normalized_log = log_a > 0.0 ? static_cast<double>(r.count) / (denom * log_a) : 0.0;
}

// Counts v with prefix fixed, remaining coordinates ranging over the box,
// with the Euclidean ball filter and |Q(v)| < B. Recursion keeps the
// squared-norm budget; the form value is evaluated at the leaves.
std::int64_t count_rec(const GramForm& q, int level, double norm_left, double b,
                       std::int64_t* v) {
    const int n = q.dim();
    const std::int64_t lim = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(norm_left, 0.0))));
    if (level == n - 1) {
        std::int64_t cnt = 0;
        for (std::int64_t t = -lim; t <= lim; ++t) {
            v[level] = t;
            const double val = evaluate(q, std::span<const std::int64_t>(v, static_cast<size_t>(n)));
            if (std::fabs(val) < b) ++cnt;
        }
        return cnt;
    }
    std::int64_t cnt = 0;
    for (std::int64_t t = -lim; t <= lim; ++t) {
        v[level] = t;
        cnt += count_rec(q, level + 1, norm_left - static_cast<double>(t) * t, b, v);
    }
    return cnt;
}

} // namespace

CountReport count_box(const CountQuery& query, int threads) {
    const auto start = std::chrono::steady_clock::now();
    const GramForm& q = query.form;
    const int n = q.dim();
    if (n < 3 || n > 6)
        throw invalid_input("count_box: dimension must be in {3,...,6}");
    if (!(query.A > 0.0)) throw invalid_input("count_box: A must be positive");
    if (!(query.B > 0.0)) throw invalid_input("count_box: B must be positive");
    const Signature sig = signature_of(q);
    if (sig.q == 0)
        throw invalid_input("count_box: form is positive-definite; use enumerate_values instead");
    const double side = 2.0 * std::floor(query.A) + 1.0;
    if (std::pow(side, n) > 2e9)
        throw numeric_domain_error("count_box: (2A+1)^n exceeds the 2e9 budget");

    const double a2 = query.A * query.A;
    const std::int64_t lim = static_cast<std::int64_t>(std::floor(query.A));
    const std::int64_t n_first = 2 * lim + 1;
    std::vector<std::int64_t> partial(static_cast<size_t>(n_first), 0);
    parallel_chunks(n_first, 1, threads, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t idx = lo; idx < hi; ++idx) {
            const std::int64_t first = idx - lim;
            std::int64_t v[8] = {};
            v[0] = first;
            partial[static_cast<size_t>(idx)] =
                count_rec(q, 1, a2 - static_cast<double>(first) * first, query.B, v);
        }
    });
    std::int64_t total = 0;
    for (std::int64_t c : partial) total += c;

    CountReport r;
    r.A = query.A;
    r.B = query.B;
    r.signature = sig;
    r.region = "joint_ball";
    r.count_no_origin = total - 1;  // the origin always satisfies both constraints
    r.count = query.include_origin ? total : total - 1;
    fill_normalization(r, n);
    r.seconds = elapsed_seconds(start);
    return r;
}

CountReport count_difference(const GramForm& q_pd, double A, double B, bool include_origin) {
    const auto start = std::chrono::steady_clock::now();
    const GramForm qc = q_pd.classified();
    if (!qc.is_positive_definite())
        throw invalid_input("count_difference: base form must be positive-definite");
    const int m = qc.dim();
    if (m != 2 && m != 3)
        throw invalid_input("count_difference: base form must have 2 or 3 variables");
    if (!(A > 0.0)) throw invalid_input("count_difference: A must be positive");
    if (!(B > 0.0)) throw invalid_input("count_difference: B must be positive");
    if (std::pow(2.0 * std::floor(A) + 1.0, m) > 2e9)
        throw numeric_domain_error("count_difference: (2A+1)^m exceeds the 2e9 budget");

    // Values Q(u) over 0 < ||u|| <= A (every lattice point, with multiplicity).
    std::vector<double> vals;
    const std::int64_t lim = static_cast<std::int64_t>(std::floor(A));
    const double a2 = A * A;
    std::int64_t v[8] = {};
    if (m == 2) {
        for (std::int64_t x = -lim; x <= lim; ++x) {
            const double rem = a2 - static_cast<double>(x) * x;
            const std::int64_t ylim = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(rem, 0.0))));
            for (std::int64_t y = -ylim; y <= ylim; ++y) {
                if (x == 0 && y == 0) continue;
                v[0] = x;
                v[1] = y;
                vals.push_back(evaluate(qc, std::span<const std::int64_t>(v, 2)));
            }
        }
    } else {
        for (std::int64_t x = -lim; x <= lim; ++x) {
            const double remx = a2 - static_cast<double>(x) * x;
            const std::int64_t ylim = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(remx, 0.0))));
            for (std::int64_t y = -ylim; y <= ylim; ++y) {
                const double remy = remx - static_cast<double>(y) * y;
                const std::int64_t zlim = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(remy, 0.0))));
                for (std::int64_t z = -zlim; z <= zlim; ++z) {
                    if (x == 0 && y == 0 && z == 0) continue;
                    v[0] = x;
                    v[1] = y;
                    v[2] = z;
                    vals.push_back(evaluate(qc, std::span<const std::int64_t>(v, 3)));
                }
            }
        }
    }
    std::sort(vals.begin(), vals.end());

    // Ordered pairs of nonzero points with |Q(u) - Q(v)| < B: for each u,
    // count values in the open window (Q(u) - B, Q(u) + B) by two pointers.
    const std::int64_t n_vals = static_cast<std::int64_t>(vals.size());
    std::int64_t pairs = 0;
    std::int64_t lo = 0, hi = 0;
    for (std::int64_t i = 0; i < n_vals; ++i) {
        while (lo < n_vals && vals[static_cast<size_t>(lo)] <= vals[static_cast<size_t>(i)] - B) ++lo;
        while (hi < n_vals && vals[static_cast<size_t>(hi)] < vals[static_cast<size_t>(i)] + B) ++hi;
        pairs += hi - lo;
    }

    // Origin bookkeeping: (0,0) and the mixed pairs (0,v) / (u,0), which
    // require Q(v) < B (form values are positive).
    const std::int64_t below_b = static_cast<std::int64_t>(
        std::lower_bound(vals.begin(), vals.end(), B) - vals.begin());

    CountReport r;
    r.A = A;
    r.B = B;
    r.signature = Signature{m, m};
    r.region = "separate_norm";
    r.zero_zero_pairs = 1;
    r.half_zero_pairs = 2 * below_b;
    r.count_no_origin = pairs + r.half_zero_pairs;
    r.count = r.count_no_origin + (include_origin ? 1 : 0);
    fill_normalization(r, 2 * m);
    r.seconds = elapsed_seconds(start);
    return r;
}

std::vector<CountReport> dyadic_table(const GramForm& form, std::span<const double> a_list,
                                      std::span<const double> b_list, bool include_origin,
                                      int threads) {
    std::vector<CountReport> out;
    out.reserve(a_list.size() * b_list.size());
    for (double a : a_list)
        for (double b : b_list)
            out.push_back(count_box(CountQuery{form, a, b, include_origin}, threads));
    return out;
}

std::vector<CountReport> dyadic_table_difference(const GramForm& q_pd,
                                                 std::span<const double> a_list,
                                                 std::span<const double> b_list,
                                                 bool include_origin) {
    std::vector<CountReport> out;
    out.reserve(a_list.size() * b_list.size());
    for (double a : a_list)
        for (double b : b_list) out.push_back(count_difference(q_pd, a, b, include_origin));
    return out;
}

} // namespace critline
