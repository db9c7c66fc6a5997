#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "critline/forms.hpp"

namespace critline {

struct CountQuery {
    GramForm form;
    double A = 1.0;   // Euclidean norm bound, >= 1
    double B = 1.0;   // value window half-width, > 0
    bool include_origin = true;
};

struct CountReport {
    double A = 0.0;
    double B = 0.0;
    std::int64_t count = 0;            // honors include_origin
    std::int64_t count_no_origin = 0;
    double normalized = 0.0;           // count / (B A^{n-2})
    double normalized_log = 0.0;       // count / (B A^{n-2} ln A)
    Signature signature;
    double seconds = 0.0;
    // Difference-path bookkeeping (zero for count_box):
    std::int64_t zero_zero_pairs = 0;  // (u,v) = (0,0)
    std::int64_t half_zero_pairs = 0;  // exactly one of u, v zero
    std::string region;                // "joint_ball" or "separate_norm"
};

// Exact #{v in Z^n : ||v|| <= A, |Q(v)| < B} for an indefinite form,
// n in {3,...,6}, by box enumeration with ball pruning. Strict inequality
// at the value boundary, closed at the norm boundary. Budget:
// (2A+1)^n <= 2e9. Parallel over the first coordinate; partial counts
// combine by integer addition, so results are thread-count independent.
CountReport count_box(const CountQuery& query, int threads = 0);

// Fast path for the difference form Q(u) - Q(v) of a positive-definite
// form in m in {2,3} variables. Counts the separate-norm region
//   {(u,v) : ||u|| <= A, ||v|| <= A, |Q(u) - Q(v)| < B}
// (a subset of the joint ball of radius sqrt(2) A) by sorting the value
// multiset once and sliding a window. Pairs with u = 0 and/or v = 0 are
// counted separately and reported.
CountReport count_difference(const GramForm& q_pd, double A, double B,
                             bool include_origin = true);

// Row-major grid of count_box reports over A_list x B_list.
std::vector<CountReport> dyadic_table(const GramForm& form, std::span<const double> a_list,
                                      std::span<const double> b_list, bool include_origin = true,
                                      int threads = 0);

// Same grid through the count_difference fast path.
std::vector<CountReport> dyadic_table_difference(const GramForm& q_pd,
                                                 std::span<const double> a_list,
                                                 std::span<const double> b_list,
                                                 bool include_origin = true);

} // namespace critline
