#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "critline/forms.hpp"
#include "oracles.hpp"

#include <cmath>
#include <vector>

using namespace critline;

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(GramForm(2, {1, 0.5, 0.5000001, 1}), invalid_input);          // asymmetric
    CHECK_THROWS_AS(GramForm(1, {1}), invalid_input);                             // m too small
    CHECK_THROWS_AS(GramForm(2, {1, 0, 0}), invalid_input);                       // wrong size
    CHECK_THROWS_AS(GramForm(2, {0, 1, 1, 0}, Definiteness::positive_definite),   // not PD
                    invalid_input);
    CHECK_NOTHROW(GramForm(2, {2, 1, 1, 1}, Definiteness::positive_definite));
}

TEST_CASE("evaluate") {
    const GramForm id2 = GramForm::identity(2);
    const std::vector<std::int64_t> v34 = {3, 4};
    CHECK(evaluate(id2, v34) == 25.0);

    const GramForm g(2, {2, 1, 1, 1});
    const std::vector<std::int64_t> e1 = {1, 0};
    CHECK(evaluate(g, e1) == 2.0);

    // z = i induces the sum of two squares
    const GramForm qi = form_from_h2(HyperbolicPoint(0.0, 1.0));
    for (std::int64_t c = -3; c <= 3; ++c)
        for (std::int64_t d = -3; d <= 3; ++d) {
            const std::vector<std::int64_t> v = {c, d};
            CHECK(evaluate(qi, v) == static_cast<double>(c * c + d * d));
        }
    CHECK_THROWS_AS(evaluate(id2, std::vector<std::int64_t>{1, 2, 3}), invalid_input);
}

TEST_CASE("dual") {
    const GramForm d(2, {2, 0, 0, 0.5});
    const GramForm dd = dual(d);
    CHECK(dd.at(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dd.at(1, 1) == doctest::Approx(2.0).epsilon(1e-14));

    const GramForm g(2, {2, 1, 1, 1});
    const GramForm gd = dual(g);
    CHECK(gd.at(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gd.at(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(gd.at(1, 1) == doctest::Approx(2.0).epsilon(1e-14));

    // near-singular rejection
    CHECK_THROWS_AS(dual(GramForm(2, {1, 1, 1, 1 + 1e-14})), numeric_domain_error);
}

TEST_CASE("dual involution and discriminant product (random forms)") {
    oracles::Rng rng(12345);
    for (int m : {2, 3, 4}) {
        for (int rep = 0; rep < 20; ++rep) {
            const GramForm q = oracles::random_pd_form(rng, m, 0.5, 4.0);
            const GramForm back = dual(dual(q));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    CHECK(back.at(i, j) ==
                          doctest::Approx(q.at(i, j)).epsilon(1e-12).scale(1.0));
            CHECK(discriminant(q) * discriminant(dual(q)) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("discriminant") {
    CHECK(discriminant(GramForm::identity(2)) == doctest::Approx(1.0));
    oracles::Rng rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        const double x = rng.uniform(-2, 2), y = rng.uniform(1e-3, 3);
        CHECK(discriminant(form_from_h2(HyperbolicPoint(x, y))) ==
              doctest::Approx(y * y).epsilon(1e-11));
        const double x2 = rng.uniform(-2, 2);
        CHECK(discriminant(form_from_h3(HyperbolicPoint(x, x2, y))) ==
              doctest::Approx(y * y * y * y).epsilon(1e-11));
    }
}

TEST_CASE("signature_of") {
    CHECK(signature_of(GramForm(3, {1, 0, 0, 0, 1, 0, 0, 0, -1})) == Signature{2, 1});
    CHECK(signature_of(GramForm(3, {1, 0, 0, 0, -1, 0, 0, 0, -1})) == Signature{1, 2});
    CHECK(signature_of(difference_form(GramForm::identity(2))) == Signature{2, 2});
    // hyperbolic plane: zero diagonal forces the 2x2 pivot
    CHECK(signature_of(GramForm(2, {0, 1, 1, 0})) == Signature{1, 1});
    CHECK_THROWS_AS(signature_of(GramForm(3, {1, 0, 0, 0, 1e-12, 0, 0, 0, -1})),
                    numeric_domain_error);

    oracles::Rng rng(99);
    for (int m : {2, 3, 4})
        for (int rep = 0; rep < 10; ++rep)
            CHECK(signature_of(difference_form(oracles::random_pd_form(rng, m))) ==
                  Signature{m, m});
}

TEST_CASE("form_from_h2 / form_from_h3") {
    CHECK(form_from_h2(HyperbolicPoint(0.0, 1.0)) == GramForm::identity(2));
    const GramForm g = form_from_h2(HyperbolicPoint(1.0, 1.0));
    CHECK(g == GramForm(2, {2, 1, 1, 1}, Definiteness::positive_definite));

    CHECK(form_from_h3(HyperbolicPoint(0.0, 0.0, 1.0)) == GramForm::identity(4));
    const HyperbolicPoint z3(0.7, -0.4, 1.3);
    const GramForm q3 = form_from_h3(z3);
    const std::vector<std::int64_t> e1 = {1, 0, 0, 0};
    CHECK(evaluate(q3, e1) == z3.quaternion_norm());

    // Cholesky check across a grid with y down to 1e-3
    for (double y : {1e-3, 0.02, 0.5, 1.0, 3.0})
        for (double x : {-0.5, 0.0, 0.4}) {
            CHECK(form_from_h2(HyperbolicPoint(x, y)).is_positive_definite());
            CHECK(form_from_h3(HyperbolicPoint(x, 0.3, y)).is_positive_definite());
        }
}

TEST_CASE("difference_form identity and value splitting") {
    CHECK(difference_form(GramForm::identity(2)) ==
          GramForm(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1},
                   Definiteness::indefinite));
    oracles::Rng rng(4242);
    for (int m : {2, 3}) {
        const GramForm q = oracles::random_pd_form(rng, m);
        const GramForm diff = difference_form(q);
        for (int rep = 0; rep < 30; ++rep) {
            std::vector<std::int64_t> u(static_cast<size_t>(m)), w(static_cast<size_t>(m)), uw;
            for (auto& c : u) c = rng.integer(-5, 5);
            for (auto& c : w) c = rng.integer(-5, 5);
            uw = u;
            uw.insert(uw.end(), w.begin(), w.end());
            CHECK(evaluate(diff, uw) ==
                  doctest::Approx(evaluate(q, u) - evaluate(q, w)).epsilon(1e-13).scale(1.0));
        }
    }
    CHECK_THROWS_AS(difference_form(GramForm(2, {1, 0, 0, -1})), invalid_input);
}

TEST_CASE("scale and unimodular_transform") {
    CHECK(scale(GramForm::identity(2), 2.0) == GramForm(2, {2, 0, 0, 2}));
    CHECK_THROWS_AS(scale(GramForm::identity(2), -1.0), invalid_input);

    const std::vector<std::int64_t> shear = {1, 1, 0, 1};
    CHECK(unimodular_transform(GramForm::identity(2), shear) == GramForm(2, {1, 1, 1, 2}));
    const std::vector<std::int64_t> not_unimodular = {2, 0, 0, 1};
    CHECK_THROWS_AS(unimodular_transform(GramForm::identity(2), not_unimodular), invalid_input);

    oracles::Rng rng(31337);
    for (int m : {2, 3, 4})
        for (int rep = 0; rep < 10; ++rep) {
            const GramForm q = oracles::random_pd_form(rng, m);
            const auto pair = oracles::random_unimodular(rng, m, 4);
            CHECK(std::llabs(integer_determinant(pair.u, m)) == 1);
            const GramForm qt = unimodular_transform(q, pair.u);
            CHECK(discriminant(qt) == doctest::Approx(discriminant(q)).epsilon(1e-12));
        }
}

TEST_CASE("evaluate invariant under (Q, v) -> (U^T Q U, U^inv v) on integer data") {
    oracles::Rng rng(555);
    const GramForm q(3, {2, 1, 0, 1, 3, -1, 0, -1, 4});
    for (int rep = 0; rep < 20; ++rep) {
        const auto pair = oracles::random_unimodular(rng, 3);
        const GramForm qt = unimodular_transform(q, pair.u);
        std::vector<std::int64_t> v = {rng.integer(-4, 4), rng.integer(-4, 4), rng.integer(-4, 4)};
        std::vector<std::int64_t> vi(3, 0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) vi[static_cast<size_t>(i)] += pair.u_inv[static_cast<size_t>(i) * 3 + j] * v[static_cast<size_t>(j)];
        CHECK(evaluate(qt, vi) == evaluate(q, v));  // exact integer data
    }
}

TEST_CASE("text round-trip, digest, parsers") {
    oracles::Rng rng(2024);
    const GramForm q = oracles::random_pd_form(rng, 3);
    const GramForm back = parse_form_text(q.text());
    CHECK(back == q);
    CHECK(back.digest() == q.digest());

    const GramForm inl = parse_form_inline("2,1;1,1");
    CHECK(inl == GramForm(2, {2, 1, 1, 1}));
    CHECK_THROWS_AS(parse_form_inline("2,1;1"), invalid_input);
    CHECK_THROWS_AS(parse_form_inline("2,x;1,1"), invalid_input);
    CHECK_THROWS_AS(parse_form_text("2\n1 0\n0"), invalid_input);
    CHECK(GramForm::identity(2).digest() != GramForm::identity(3).digest());
}

TEST_CASE("hyperbolic point invariants") {
    CHECK_THROWS_AS(HyperbolicPoint(0.0, -1.0), invalid_input);
    CHECK_THROWS_AS(HyperbolicPoint(0.0, 0.0, 0.0), invalid_input);
    const HyperbolicPoint z(1.0, 2.0, 2.0);
    CHECK(z.quaternion_norm() == 9.0);
    CHECK(HyperbolicPoint(3.0, 4.0).x2() == 0.0);
}
