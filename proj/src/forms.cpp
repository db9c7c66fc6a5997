#include "critline/forms.hpp"

#include "critline/kahan.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace critline {

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Mat to_eigen(const GramForm& q) {
    return Eigen::Map<const Mat>(q.gram().data(), q.dim(), q.dim());
}

void append_fp17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

double max_abs_entry(const std::vector<double>& g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::fabs(v));
    return m;
}

} // namespace

HyperbolicPoint::HyperbolicPoint(double x1, double y)
    : x1_(x1), x2_(0.0), y_(y), dim_(2) {
    if (!(std::isfinite(x1) && std::isfinite(y)))
        throw invalid_input("HyperbolicPoint: coordinates must be finite");
    if (!(y > 0.0)) throw invalid_input("HyperbolicPoint: y must be positive");
}

HyperbolicPoint::HyperbolicPoint(double x1, double x2, double y)
    : x1_(x1), x2_(x2), y_(y), dim_(3) {
    if (!(std::isfinite(x1) && std::isfinite(x2) && std::isfinite(y)))
        throw invalid_input("HyperbolicPoint: coordinates must be finite");
    if (!(y > 0.0)) throw invalid_input("HyperbolicPoint: y must be positive");
}

GramForm::GramForm(int m, std::vector<double> gram_row_major, Definiteness flag)
    : m_(m), gram_(std::move(gram_row_major)), flag_(flag) {
    if (m_ < 2 || m_ > 8)
        throw invalid_input("GramForm: dimension must be in [2, 8]");
    if (gram_.size() != static_cast<size_t>(m_) * m_)
        throw invalid_input("GramForm: entry count does not match dimension");
    for (double v : gram_)
        if (!std::isfinite(v)) throw invalid_input("GramForm: entries must be finite");
    for (int i = 0; i < m_; ++i)
        for (int j = i + 1; j < m_; ++j)
            if (at(i, j) != at(j, i))
                throw invalid_input("GramForm: matrix is not exactly symmetric");
    if (flag_ == Definiteness::positive_definite) {
        Eigen::LLT<Mat> llt(to_eigen(*this));
        if (llt.info() != Eigen::Success)
            throw invalid_input("GramForm: flagged positive-definite but Cholesky failed");
    }
}

GramForm GramForm::identity(int m) {
    std::vector<double> g(static_cast<size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) g[static_cast<size_t>(i) * m + i] = 1.0;
    return GramForm(m, std::move(g), Definiteness::positive_definite);
}

GramForm GramForm::classified() const {
    if (flag_ != Definiteness::unchecked) return *this;
    Eigen::LLT<Mat> llt(to_eigen(*this));
    Definiteness f = (llt.info() == Eigen::Success) ? Definiteness::positive_definite
                                                    : Definiteness::indefinite;
    return GramForm(m_, gram_, f);
}

std::string GramForm::text() const {
    std::string out = std::to_string(m_);
    out += '\n';
    for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < m_; ++j) {
            if (j) out += ' ';
            append_fp17(out, at(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string GramForm::digest() const {
    const std::string t = text();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : t) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

double evaluate(const GramForm& q, std::span<const std::int64_t> v) {
    const int m = q.dim();
    if (static_cast<int>(v.size()) != m)
        throw invalid_input("evaluate: vector length does not match form dimension");
    KahanSum acc;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            acc.add(q.at(i, j) * static_cast<double>(v[i]) * static_cast<double>(v[j]));
    return acc.value();
}

GramForm dual(const GramForm& q) {
    const int m = q.dim();
    double scale = 1.0;
    for (int i = 0; i < m; ++i) {
        double row_max = 0.0;
        for (int j = 0; j < m; ++j) row_max = std::max(row_max, std::fabs(q.at(i, j)));
        scale *= row_max;
    }
    Mat g = to_eigen(q);
    Eigen::PartialPivLU<Mat> lu(g);
    const double det = lu.determinant();
    if (!(std::fabs(det) > 1e-12 * scale))
        throw numeric_domain_error("dual: Gram matrix is numerically singular");
    Mat inv = lu.inverse();
    std::vector<double> h(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            const double v = 0.5 * (inv(i, j) + inv(j, i));
            h[static_cast<size_t>(i) * m + j] = v;
            h[static_cast<size_t>(j) * m + i] = v;
        }
    Definiteness f = q.is_positive_definite() ? Definiteness::positive_definite
                                              : Definiteness::unchecked;
    return GramForm(m, std::move(h), f);
}

double discriminant(const GramForm& q) {
    Eigen::PartialPivLU<Mat> lu(to_eigen(q));
    return lu.determinant();
}

Signature signature_of(const GramForm& q) {
    // Bunch-Parlett style full pivoting: compare the largest remaining
    // diagonal against the largest off-diagonal entry; a dominant
    // off-diagonal forces a 2x2 pivot whose block has negative determinant
    // and so contributes (+1, -1) to the inertia.
    const int m = q.dim();
    Mat a = to_eigen(q);
    const double norm0 = max_abs_entry(q.gram());
    const double tiny = 1e-10 * norm0;
    constexpr double alpha = 0.6404;  // (1 + sqrt(17)) / 8

    std::vector<int> live(m);
    for (int i = 0; i < m; ++i) live[i] = i;
    int p = 0, qn = 0;

    while (!live.empty()) {
        double diag_max = 0.0, off_max = 0.0;
        size_t di = 0;
        size_t oi = 0, oj = 0;
        for (size_t r = 0; r < live.size(); ++r) {
            const double dv = std::fabs(a(live[r], live[r]));
            if (dv > diag_max) { diag_max = dv; di = r; }
            for (size_t c = r + 1; c < live.size(); ++c) {
                const double ov = std::fabs(a(live[r], live[c]));
                if (ov > off_max) { off_max = ov; oi = r; oj = c; }
            }
        }
        if (std::max(diag_max, off_max) <= tiny)
            throw numeric_domain_error("signature_of: form is numerically degenerate");

        if (diag_max >= alpha * off_max) {
            const int k = live[di];
            const double d = a(k, k);
            (d > 0.0 ? p : qn) += 1;
            live.erase(live.begin() + static_cast<long>(di));
            for (size_t r = 0; r < live.size(); ++r)
                for (size_t c = r; c < live.size(); ++c) {
                    const int i = live[r], j = live[c];
                    const double upd = a(i, j) - a(i, k) * a(k, j) / d;
                    a(i, j) = upd;
                    a(j, i) = upd;
                }
        } else {
            const int k1 = live[oi], k2 = live[oj];
            const double b11 = a(k1, k1), b12 = a(k1, k2), b22 = a(k2, k2);
            const double det2 = b11 * b22 - b12 * b12;  // < 0 by pivot choice
            p += 1;
            qn += 1;
            live.erase(live.begin() + static_cast<long>(oj));
            live.erase(live.begin() + static_cast<long>(oi));
            for (size_t r = 0; r < live.size(); ++r)
                for (size_t c = r; c < live.size(); ++c) {
                    const int i = live[r], j = live[c];
                    const double u = a(i, k1), v = a(i, k2);
                    const double x = a(k1, j), y = a(k2, j);
                    // Subtract [u v] * inv([[b11,b12],[b12,b22]]) * [x y]^T.
                    const double s1 = (b22 * x - b12 * y) / det2;
                    const double s2 = (-b12 * x + b11 * y) / det2;
                    const double upd = a(i, j) - (u * s1 + v * s2);
                    a(i, j) = upd;
                    a(j, i) = upd;
                }
        }
    }
    return Signature{p, qn};
}

GramForm form_from_h2(const HyperbolicPoint& z) {
    if (z.dim() != 2) throw invalid_input("form_from_h2: point must have dim 2");
    const double x = z.x1(), y = z.y();
    std::vector<double> g = {x * x + y * y, x, x, 1.0};
    return GramForm(2, std::move(g), Definiteness::positive_definite);
}

GramForm form_from_h3(const HyperbolicPoint& z) {
    if (z.dim() != 3) throw invalid_input("form_from_h3: point must have dim 3");
    const double x1 = z.x1(), x2 = z.x2();
    const double n = z.quaternion_norm();
    // Variable order (c1, c2, d1, d2).
    std::vector<double> g = {
        n,   0.0, x1,  x2,
        0.0, n,   -x2, x1,
        x1,  -x2, 1.0, 0.0,
        x2,  x1,  0.0, 1.0,
    };
    return GramForm(4, std::move(g), Definiteness::positive_definite);
}

GramForm difference_form(const GramForm& q) {
    if (!q.classified().is_positive_definite())
        throw invalid_input("difference_form: base form must be positive-definite");
    const int m = q.dim();
    if (2 * m > 8)
        throw invalid_input("difference_form: 2m exceeds the 8-variable limit");
    const int n = 2 * m;
    std::vector<double> g(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            g[static_cast<size_t>(i) * n + j] = q.at(i, j);
            g[static_cast<size_t>(m + i) * n + (m + j)] = -q.at(i, j);
        }
    return GramForm(n, std::move(g), Definiteness::indefinite);
}

GramForm scale(const GramForm& q, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw invalid_input("scale: factor must be positive and finite");
    std::vector<double> g = q.gram();
    for (double& v : g) v *= c;
    return GramForm(q.dim(), std::move(g), q.definiteness());
}

std::int64_t integer_determinant(std::span<const std::int64_t> a_row_major, int n) {
    if (static_cast<int>(a_row_major.size()) != n * n)
        throw invalid_input("integer_determinant: size mismatch");
    // Bareiss fraction-free elimination in 128-bit intermediates.
    std::vector<__int128> a(a_row_major.begin(), a_row_major.end());
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[static_cast<size_t>(k) * n + k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (a[static_cast<size_t>(r) * n + k] != 0) { swap_row = r; break; }
            if (swap_row < 0) return 0;
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<size_t>(k) * n + c], a[static_cast<size_t>(swap_row) * n + c]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                __int128 v = a[static_cast<size_t>(i) * n + j] * a[static_cast<size_t>(k) * n + k] -
                             a[static_cast<size_t>(i) * n + k] * a[static_cast<size_t>(k) * n + j];
                a[static_cast<size_t>(i) * n + j] = v / prev;
            }
        prev = a[static_cast<size_t>(k) * n + k];
    }
    return sign * static_cast<std::int64_t>(a[static_cast<size_t>(n - 1) * n + (n - 1)]);
}

GramForm unimodular_transform(const GramForm& q, std::span<const std::int64_t> u_row_major) {
    const int m = q.dim();
    const std::int64_t det = integer_determinant(u_row_major, m);
    if (det != 1 && det != -1)
        throw invalid_input("unimodular_transform: matrix determinant is not +-1");
    auto u = [&](int i, int j) {
        return static_cast<double>(u_row_major[static_cast<size_t>(i) * m + j]);
    };
    std::vector<double> g(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            KahanSum acc;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    acc.add(u(a, i) * q.at(a, b) * u(b, j));
            const double v = acc.value();
            g[static_cast<size_t>(i) * m + j] = v;
            g[static_cast<size_t>(j) * m + i] = v;
        }
    return GramForm(m, std::move(g), q.definiteness());
}

GramForm parse_form_text(const std::string& text) {
    std::istringstream in(text);
    int m = 0;
    if (!(in >> m)) throw invalid_input("form text: missing dimension line");
    if (m < 2 || m > 8) throw invalid_input("form text: dimension must be in [2, 8]");
    std::vector<double> g(static_cast<size_t>(m) * m);
    for (auto& v : g)
        if (!(in >> v)) throw invalid_input("form text: too few Gram entries");
    double extra;
    if (in >> extra) throw invalid_input("form text: trailing data after Gram rows");
    return GramForm(m, std::move(g));
}

GramForm parse_form_inline(const std::string& spec) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(spec);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<double> vals;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
            size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw invalid_input("inline form: unparsable entry '" + cell + "'");
            }
            while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
            if (pos != cell.size())
                throw invalid_input("inline form: unparsable entry '" + cell + "'");
            vals.push_back(v);
        }
        if (!vals.empty()) rows.push_back(std::move(vals));
    }
    const int m = static_cast<int>(rows.size());
    if (m < 2 || m > 8) throw invalid_input("inline form: dimension must be in [2, 8]");
    std::vector<double> g;
    g.reserve(static_cast<size_t>(m) * m);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != m)
            throw invalid_input("inline form: ragged rows");
        g.insert(g.end(), r.begin(), r.end());
    }
    return GramForm(m, std::move(g));
}

} // namespace critline
