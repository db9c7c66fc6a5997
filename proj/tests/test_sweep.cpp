#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "critline/specialfns.hpp"
#include "critline/sweep.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace critline;

TEST_CASE("fit_exponent") {
    {
        const std::pair<double, double> pts[3] = {{2, 4}, {4, 16}, {8, 64}};
        const ExponentFit f = fit_exponent(pts);
        CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(f.max_abs_residual < 1e-12);
        REQUIRE(f.points.size() == 3);
        CHECK(f.points[0].first == doctest::Approx(std::log(2.0)));
    }
    {
        const double c = 0.37;
        const std::pair<double, double> pts[3] = {{2, 2 * c}, {4, 4 * c}, {8, 8 * c}};
        const ExponentFit f = fit_exponent(pts);
        CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(f.intercept == doctest::Approx(std::log(c)).epsilon(1e-12));
    }
    {
        oracles::Rng rng(11);
        std::vector<std::pair<double, double>> pts;
        for (double x = 2.0; x <= 512.0; x *= 2.0)
            pts.emplace_back(x, std::pow(x, 1.3) * (1.0 + rng.uniform(-0.05, 0.05)));
        const ExponentFit f = fit_exponent(pts);
        CHECK(f.slope > 1.25);
        CHECK(f.slope < 1.35);
        // self-consistency invariant: every point reproduced within the residual
        for (const auto& [lx, ly] : f.points)
            CHECK(std::fabs(ly - (f.slope * lx + f.intercept)) <= f.max_abs_residual + 1e-15);
    }
    const std::pair<double, double> two[2] = {{1, 1}, {2, 2}};
    CHECK_THROWS_AS(fit_exponent(two), invalid_input);
    const std::pair<double, double> neg[3] = {{1, 1}, {2, -2}, {3, 3}};
    CHECK_THROWS_AS(fit_exponent(neg), invalid_input);
    const std::pair<double, double> unsorted[3] = {{2, 1}, {1, 2}, {3, 3}};
    CHECK_THROWS_AS(fit_exponent(unsorted), invalid_input);
}

TEST_CASE("mean_square_epstein: fields, quadrature stability, determinism") {
    const GramForm i2 = GramForm::identity(2);
    const MeanSquareReport r = mean_square_epstein(i2, 64.0, 1.0 / 16.0, 2);
    CHECK(r.kind == "epstein");
    CHECK(r.window == "[T,2T]");
    CHECK(r.samples == 64 * 16 + 1);
    CHECK(r.integral > 0.0);
    CHECK(r.shifted_samples == 0);
    CHECK(r.evaluator == "afe");

    // halving the step changes the integral by < 1%
    const MeanSquareReport r2 = mean_square_epstein(i2, 64.0, 1.0 / 32.0, 2);
    CHECK(std::fabs(r2.integral - r.integral) < 0.01 * r.integral);

    // bit-identical across thread counts
    const MeanSquareReport a = mean_square_epstein(i2, 64.0, 1.0 / 16.0, 1);
    const MeanSquareReport b = mean_square_epstein(i2, 64.0, 1.0 / 16.0, 3);
    CHECK(a.integral == b.integral);

    CHECK_THROWS_AS(mean_square_epstein(i2, 32.0, 1.0 / 16.0, 0), numeric_domain_error);
    CHECK_THROWS_AS(mean_square_epstein(i2, 64.0, 0.5, 0), invalid_input);
}

TEST_CASE("mean_square_epstein: scale homogeneity of the integral") {
    // |Z_{cQ}(1/2+it)|^2 = c^{-1} |Z_Q(1/2+it)|^2 pointwise
    const GramForm q(2, {1.0, 0.25, 0.25, 1.5});
    const MeanSquareReport base = mean_square_epstein(q, 64.0, 1.0 / 16.0, 2);
    for (double c : {0.5, 3.0}) {
        const MeanSquareReport scaled = mean_square_epstein(scale(q, c), 64.0, 1.0 / 16.0, 2);
        CHECK(scaled.integral == doctest::Approx(base.integral / c).epsilon(1e-6));
    }
}

TEST_CASE("mean_square_epstein against the factorization oracle at T = 128") {
    const GramForm i2 = GramForm::identity(2);
    const double step = 1.0 / 16.0;
    const MeanSquareReport r = mean_square_epstein(i2, 128.0, step, 2);
    // trapezoid of |4 zeta L|^2 over [128, 256] with the same grid
    double sum = 0.0;
    const std::int64_t n = 128 * 16 + 1;
    for (std::int64_t k = 0; k < n; ++k) {
        const double t = 128.0 + static_cast<double>(k) * step;
        const Complex s(0.5, t);
        const double f = std::norm(4.0 * riemann_zeta(s) * dirichlet_L_chi4(s));
        sum += (k == 0 || k == n - 1) ? 0.5 * f : f;
    }
    const double oracle = step * sum;
    CHECK(std::fabs(r.integral - oracle) < 0.10 * oracle);
}

TEST_CASE("mean_square_eisenstein: fields, symmetry, monotonicity, ladder") {
    const HyperbolicPoint z(0.0, 1.0);
    const MeanSquareReport r64 = mean_square_eisenstein(Lattice::modular, z, 64.0, 1.0 / 16.0, 2);
    CHECK(r64.kind == "eisenstein");
    CHECK(r64.window == "[-T,T]");
    CHECK(r64.samples == 2 * 64 * 16 + 1);
    CHECK(r64.integral > 0.0);

    const MeanSquareReport r128 = mean_square_eisenstein(Lattice::modular, z, 128.0, 1.0 / 16.0, 2);
    CHECK(r128.integral >= r64.integral);

    // ladder pass reproduces the standalone runs bit-for-bit
    const double ladder[2] = {64.0, 128.0};
    const auto both = mean_square_eisenstein_ladder(Lattice::modular, z, ladder, 1.0 / 16.0, 2);
    REQUIRE(both.size() == 2);
    CHECK(both[0].integral == r64.integral);
    CHECK(both[1].integral == r128.integral);

    // determinism across thread counts
    const MeanSquareReport t1 = mean_square_eisenstein(Lattice::modular, z, 64.0, 1.0 / 16.0, 1);
    CHECK(t1.integral == r64.integral);

    CHECK_THROWS_AS(mean_square_eisenstein(Lattice::picard, z, 64.0, 1.0 / 16.0, 0),
                    numeric_domain_error);
    CHECK_THROWS_AS(mean_square_eisenstein(Lattice::modular, HyperbolicPoint(2.0, 1.0), 64.0,
                                           1.0 / 16.0, 0),
                    invalid_input);
}

TEST_CASE("eisenstein integrand is even in t (pointwise, via conjugation)") {
    // The [-T, T] window is folded by evenness; check |E(1/2+it)| = |E(1/2-it)|
    // at AFE heights through the public evaluator.
    const GramForm qz = form_from_h2(HyperbolicPoint(0.0, 1.0));
    for (double t : {4.0, 17.0}) {
        const Complex plus = eval_afe(qz, t);
        const Complex minus = eval_afe(qz, -t);
        CHECK(plus.real() == minus.real());
        CHECK(plus.imag() == -minus.imag());
    }
}

TEST_CASE("zeta-zero guard is quiet on real grids") {
    bool shifted = true;
    const double t = detail::guarded_height(37.0625, 1.0 / 16.0, shifted);
    CHECK(t == 37.0625);
    CHECK(!shifted);
}

TEST_CASE("pointwise_picard_growth") {
    // fit sanity on synthetic W(T) = sqrt(T) handled by fit_exponent directly
    std::vector<std::pair<double, double>> synth;
    for (double t : {100.0, 200.0, 400.0, 800.0}) synth.emplace_back(t, std::sqrt(t));
    CHECK(fit_exponent(synth).slope == doctest::Approx(0.5).epsilon(1e-12));

    const double t_list[4] = {100.0, 200.0, 400.0, 800.0};
    const ExponentFit f = pointwise_picard_growth(t_list);
    CHECK(f.slope > 0.25);
    CHECK(f.slope < 0.75);

    const double bad_order[4] = {100.0, 90.0, 400.0, 800.0};
    CHECK_THROWS_AS(pointwise_picard_growth(bad_order), invalid_input);
    const double too_few[3] = {100.0, 200.0, 400.0};
    CHECK_THROWS_AS(pointwise_picard_growth(too_few), invalid_input);
    const double too_high[4] = {100.0, 200.0, 400.0, 2e4};
    CHECK_THROWS_AS(pointwise_picard_growth(too_high), invalid_input);
}

TEST_CASE("picard growth window stability (10 vs 20 wide)") {
    auto window_max = [](double t0, double width, int n) {
        double w = 0.0;
        for (int j = 0; j < n; ++j)
            w = std::max(w, std::abs(eis_picard_special_point(t0 + width * j / (n - 1))));
        return w;
    };
    std::vector<std::pair<double, double>> w10, w20;
    for (double t : {100.0, 200.0, 400.0, 800.0, 1600.0}) {
        w10.emplace_back(t, window_max(t, 10.0, 21));
        w20.emplace_back(t, window_max(t, 20.0, 41));
    }
    const double s10 = fit_exponent(w10).slope;
    const double s20 = fit_exponent(w20).slope;
    CHECK(std::fabs(s10 - s20) < 0.05);
}

TEST_CASE("sup_over_grid") {
    const HyperbolicPoint z(0.25, 1.25);
    const HyperbolicPoint grid1[1] = {z};
    const MeanSquareReport single = sup_over_grid(Lattice::modular, grid1, 64.0, 1.0 / 16.0, 2);
    const MeanSquareReport direct = mean_square_eisenstein(Lattice::modular, z, 64.0, 1.0 / 16.0, 2);
    CHECK(single.integral == direct.integral);
    CHECK(single.has_argmax);
    CHECK(single.argmax_x1 == 0.25);

    // gamma-translates of one point: all per-point integrals agree closely
    const double x = 0.25, y = 1.25;
    const double n2 = x * x + y * y;
    const HyperbolicPoint grid2[2] = {z, HyperbolicPoint(-x / n2, y / n2)};
    // the two runs use different AFE truncations (D = y^2 differs), so they
    // agree only within the propagated O(log t) evaluator tolerance
    const MeanSquareReport best = sup_over_grid(Lattice::modular, grid2, 64.0, 1.0 / 16.0, 2);
    const MeanSquareReport other =
        mean_square_eisenstein(Lattice::modular, grid2[1], 64.0, 1.0 / 16.0, 2);
    CHECK(std::fabs(best.integral - other.integral) <= 0.10 * best.integral);

    CHECK_THROWS_AS(sup_over_grid(Lattice::modular, std::span<const HyperbolicPoint>{}, 64.0,
                                  1.0 / 16.0, 0),
                    invalid_input);
}
