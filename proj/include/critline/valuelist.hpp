#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "critline/forms.hpp"

namespace critline {

struct ValueEntry {
    double lambda;
    std::int64_t count;
};

// The sorted nonzero values of a positive-definite form up to a cutoff,
// with exact multiplicities: the coefficient data (lambda_n, a_n) of the
// form's Dirichlet series. Immutable after construction.
class ValueList {
  public:
    ValueList(std::string form_digest, double cutoff, std::vector<ValueEntry> entries);

    const std::string& form_digest() const { return digest_; }
    double cutoff() const { return cutoff_; }
    const std::vector<ValueEntry>& entries() const { return entries_; }
    std::int64_t total_points() const { return total_points_; }

    // Hot-loop views, indexed like entries().
    std::span<const double> log_lambda() const { return log_lambda_; }
    std::span<const double> coeff_over_sqrt() const { return coeff_over_sqrt_; }

    // Number of leading entries with lambda <= x * (1 + 1e-9) (ties inward).
    std::size_t prefix_upto(double x) const;

  private:
    std::string digest_;
    double cutoff_;
    std::vector<ValueEntry> entries_;
    std::vector<double> log_lambda_;
    std::vector<double> coeff_over_sqrt_;
    std::int64_t total_points_ = 0;
};

// Enumerates every v != 0 with Q(v) <= cutoff (values within 1e-9 relative
// of the cutoff are tied inward) by Fincke-Pohst recursion on the Cholesky
// factor, then groups values into lambda-classes with 1e-9 relative merge
// tolerance. Leaf values are recomputed with evaluate(), so counts agree
// exactly with a brute-force box scan. Budget guard: the volume estimate
// of the point count must not exceed 1e9.
ValueList enumerate_values(const GramForm& q, double cutoff);

// Volume-based estimate of #{v != 0 : Q(v) <= cutoff}.
double estimated_point_count(const GramForm& q, double cutoff);

} // namespace critline
