#include "critline/valuelist.hpp"

#include "critline/enumerate_detail.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace critline {

ValueList::ValueList(std::string form_digest, double cutoff, std::vector<ValueEntry> entries)
    : digest_(std::move(form_digest)), cutoff_(cutoff), entries_(std::move(entries)) {
    if (!(cutoff_ > 0.0)) throw invalid_input("ValueList: cutoff must be positive");
    double prev = 0.0;
    for (const auto& e : entries_) {
        if (!(e.lambda > prev))
            throw invalid_input("ValueList: lambdas must be positive and strictly ascending");
        if (e.count < 1) throw invalid_input("ValueList: multiplicities must be >= 1");
        prev = e.lambda;
        total_points_ += e.count;
    }
    log_lambda_.reserve(entries_.size());
    coeff_over_sqrt_.reserve(entries_.size());
    for (const auto& e : entries_) {
        log_lambda_.push_back(std::log(e.lambda));
        coeff_over_sqrt_.push_back(static_cast<double>(e.count) / std::sqrt(e.lambda));
    }
}

std::size_t ValueList::prefix_upto(double x) const {
    const double bound = x * (1.0 + 1e-9);
    auto it = std::upper_bound(entries_.begin(), entries_.end(), bound,
                               [](double b, const ValueEntry& e) { return b < e.lambda; });
    return static_cast<size_t>(it - entries_.begin());
}

double estimated_point_count(const GramForm& q, double cutoff) {
    const int m = q.dim();
    const double vol_unit_ball = std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
    const double det = std::fabs(discriminant(q));
    return vol_unit_ball * std::pow(cutoff, 0.5 * m) / std::sqrt(det);
}

namespace detail {

StreamContext make_stream_context(const GramForm& q, double cutoff) {
    if (!(cutoff > 0.0)) throw invalid_input("enumeration cutoff must be positive");
    const GramForm qc = q.classified();
    if (!qc.is_positive_definite())
        throw invalid_input("enumeration requires a positive-definite form");
    if (estimated_point_count(q, cutoff) > 1e9)
        throw numeric_domain_error("enumeration budget exceeded (estimated > 1e9 points)");

    StreamContext c;
    c.form = &q;  // caller keeps the form alive for the context's lifetime
    c.m = q.dim();
    c.cutoff = cutoff;
    c.accept_bound = cutoff * (1.0 + 1e-9);
    c.prune_bound = cutoff * (1.0 + 1e-7) + 1e-12;

    using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Mat g = Eigen::Map<const Mat>(q.gram().data(), c.m, c.m);
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success)
        throw invalid_input("enumeration requires a positive-definite form");
    Mat u = llt.matrixU();
    for (int i = 0; i < c.m; ++i)
        for (int j = 0; j < c.m; ++j) c.r[i][j] = u(i, j);

    c.leading_max = static_cast<std::int64_t>(
        std::floor(std::sqrt(c.prune_bound) / c.r[c.m - 1][c.m - 1] + 1e-9));
    return c;
}

} // namespace detail

ValueList enumerate_values(const GramForm& q, double cutoff) {
    detail::StreamContext ctx = detail::make_stream_context(q, cutoff);

    std::vector<double> vals;
    if (double est = estimated_point_count(q, cutoff); est > 16.0)
        vals.reserve(static_cast<size_t>(est / 2 * 1.1) + 16);
    detail::stream_all(ctx, [&vals](std::span<const std::int64_t>, double v) { vals.push_back(v); });
    std::sort(vals.begin(), vals.end());

    std::vector<ValueEntry> entries;
    size_t i = 0;
    while (i < vals.size()) {
        const double rep = vals[i];
        size_t j = i + 1;
        while (j < vals.size() && vals[j] <= rep * (1.0 + 1e-9)) ++j;
        entries.push_back(ValueEntry{rep, 2 * static_cast<std::int64_t>(j - i)});
        i = j;
    }
    return ValueList(q.digest(), cutoff, std::move(entries));
}

} // namespace critline
