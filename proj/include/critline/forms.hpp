#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "critline/errors.hpp"

namespace critline {

enum class Definiteness { positive_definite, indefinite, unchecked };

// Inertia (p, q) of a nondegenerate symmetric form: p positive and q
// negative eigenvalue counts, p + q = dimension.
struct Signature {
    int p = 0;
    int q = 0;

    int dim() const { return p + q; }
    bool operator==(const Signature&) const = default;
};

// Point z = x1 + i*x2 + j*y in the upper half-plane (dim 2, x2 == 0) or in
// the upper half-space model of hyperbolic 3-space (dim 3).
class HyperbolicPoint {
  public:
    HyperbolicPoint(double x1, double y);             // dim 2
    HyperbolicPoint(double x1, double x2, double y);  // dim 3

    double x1() const { return x1_; }
    double x2() const { return x2_; }
    double y() const { return y_; }
    int dim() const { return dim_; }

    // Quaternion norm N(z) = x1^2 + x2^2 + y^2.
    double quaternion_norm() const { return x1_ * x1_ + x2_ * x2_ + y_ * y_; }

  private:
    double x1_, x2_, y_;
    int dim_;
};

// Quadratic form Q(v) = v^T G v in m variables (2 <= m <= 8), stored as a
// symmetric Gram matrix. Symmetry must hold exactly (bitwise) at
// construction; a form flagged positive_definite must pass a Cholesky
// factorization with positive pivots.
class GramForm {
  public:
    GramForm(int m, std::vector<double> gram_row_major,
             Definiteness flag = Definiteness::unchecked);

    static GramForm identity(int m);

    int dim() const { return m_; }
    double at(int i, int j) const { return gram_[static_cast<size_t>(i) * m_ + j]; }
    const std::vector<double>& gram() const { return gram_; }
    Definiteness definiteness() const { return flag_; }
    bool is_positive_definite() const { return flag_ == Definiteness::positive_definite; }

    // Resolves an unchecked flag by attempting a Cholesky factorization.
    GramForm classified() const;

    // Canonical text serialization: first line m, then the Gram rows with
    // 17 significant digits. This is the CLI --form-file format and the
    // byte stream the digest is computed over.
    std::string text() const;

    // FNV-1a 64-bit hash of text(), 16 lowercase hex digits.
    std::string digest() const;

    bool operator==(const GramForm& other) const {
        return m_ == other.m_ && gram_ == other.gram_;
    }

  private:
    int m_;
    std::vector<double> gram_;
    Definiteness flag_;
};

// Q(v) = v^T G v with compensated summation over the m^2 terms.
double evaluate(const GramForm& q, std::span<const std::int64_t> v);

// Form with Gram matrix G^{-1}. Requires |det G| > 1e-12 * prod_i max_j |G_ij|.
GramForm dual(const GramForm& q);

// det(G) via pivoted LU; signed for indefinite forms.
double discriminant(const GramForm& q);

// Inertia from a symmetric fully-pivoted LDL^T (1x1 and 2x2 pivots).
// Rejects forms with an eigenvalue within ~1e-10 * |G| of zero.
Signature signature_of(const GramForm& q);

// Binary form Q_z(c,d) = (x^2+y^2)c^2 + 2xcd + d^2 attached to z = x + iy.
GramForm form_from_h2(const HyperbolicPoint& z);

// Quaternary form Q_z(c1,c2,d1,d2) = N(z)(c1^2+c2^2) + d1^2 + d2^2
//   + 2(x1 c1 d1 - x2 c2 d1 + x1 c2 d2 + x2 c1 d2) attached to z in H^3.
GramForm form_from_h3(const HyperbolicPoint& z);

// Block-diagonal form diag(G, -G) in 2m variables, signature (m, m).
// The result must stay within the 8-variable limit, so m <= 4.
GramForm difference_form(const GramForm& q);

// Gram matrix scaled by c > 0.
GramForm scale(const GramForm& q, double c);

// Congruence G -> U^T G U for an integer matrix U with det(U) = +-1,
// checked by exact integer determinant.
GramForm unimodular_transform(const GramForm& q, std::span<const std::int64_t> u_row_major);

// Exact determinant of an integer matrix (Bareiss elimination).
std::int64_t integer_determinant(std::span<const std::int64_t> a_row_major, int n);

// Parsers for the two text representations.
GramForm parse_form_text(const std::string& text);     // file format
GramForm parse_form_inline(const std::string& spec);   // "a,b;c,d"

} // namespace critline
