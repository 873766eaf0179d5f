#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "solgap/numerics.hpp"
#include "solgap/spaceform.hpp"

using namespace solgap;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Independent oracle: erf by its Maclaurin series (converges fast for |x| <= 1).
double erf_series(double x) {
    double term = x;
    double sum = x;
    for (int k = 1; k < 60; ++k) {
        term *= -x * x / k;
        sum += term / (2 * k + 1);
        if (std::fabs(term) < 1e-18) break;
    }
    return 2.0 / std::sqrt(kPi) * sum;
}

// Degree-5 polynomial with its exact antiderivative.
struct Poly5 {
    std::array<double, 6> c;
    double operator()(double x) const {
        double v = 0.0;
        for (int i = 5; i >= 0; --i) v = v * x + c[i];
        return v;
    }
    double antiderivative(double x) const {
        double v = 0.0;
        for (int i = 5; i >= 0; --i) v = v * x + c[i] / (i + 1);
        return v * x;
    }
};

}  // namespace

TEST_CASE("quadrature spec and bracket validation") {
    CHECK_THROWS_AS(Bracket(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Bracket(2.0, 1.0), std::invalid_argument);
    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = QuadratureSpec{};
    bad.max_depth = 0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("integrate: closed-form integrands") {
    QuadratureSpec q;
    CHECK(integrate([](double s) { return s; }, 0.0, 1.0, q) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(integrate([](double s) { return std::sin(s); }, 0.0, kPi, q) ==
          doctest::Approx(2.0).epsilon(1e-13));
    // Gaussian piece against the erf series oracle.
    const double expected = std::sqrt(kPi) * erf_series(0.5);
    CHECK(integrate([](double s) { return std::exp(-0.25 * s * s); }, 0.0, 1.0, q) ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(integrate([](double s) { return std::sin(s); }, 1.0, 1.0, q) == 0.0);
    CHECK_THROWS_AS(integrate([](double s) { return s; }, 1.0, 0.0, q), std::domain_error);
}

TEST_CASE("integrate: exact on polynomials of degree <= 5") {
    QuadratureSpec q;
    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        Poly5 p{{coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)}};
        const double a = coef(rng);
        const double b = a + 0.5 + std::fabs(coef(rng));
        const double exact = p.antiderivative(b) - p.antiderivative(a);
        const double got = integrate([&p](double x) { return p(x); }, a, b, q);
        CHECK(std::fabs(got - exact) <= q.abs_tol * (1.0 + std::fabs(exact)));
    }
}

TEST_CASE("integrate: linearity on random polynomials") {
    QuadratureSpec q;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-1.5, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        Poly5 f{{coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)}};
        Poly5 g{{coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)}};
        const double alpha = coef(rng);
        const double beta = coef(rng);
        auto combo = [&](double x) { return alpha * f(x) + beta * g(x); };
        const double lhs = integrate(combo, -1.0, 2.0, q);
        const double rhs = alpha * integrate([&f](double x) { return f(x); }, -1.0, 2.0, q) +
                           beta * integrate([&g](double x) { return g(x); }, -1.0, 2.0, q);
        CHECK(std::fabs(lhs - rhs) <= 1e-11 * (1.0 + std::fabs(lhs)));
    }
}

TEST_CASE("integrate: claimed accuracy holds on assorted smooth integrands") {
    QuadratureSpec q;
    struct Case {
        std::function<double(double)> f;
        double a, b, exact;
    };
    const Case cases[] = {
        {[](double x) { return std::sin(17.0 * x); }, 0.0, 3.0,
         (1.0 - std::cos(51.0)) / 17.0},
        {[](double x) { return std::exp(3.0 * x); }, -1.0, 2.0,
         (std::exp(6.0) - std::exp(-3.0)) / 3.0},
        {[](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0,
         2.0 * std::atan(5.0) / 5.0},
        {[](double x) { return std::sqrt(x); }, 0.0, 4.0, 16.0 / 3.0},
    };
    for (const Case& c : cases) {
        const IntegralResult res = integrate_with_bound(c.f, c.a, c.b, q);
        const double allowed = std::max(q.abs_tol, q.rel_tol * std::fabs(res.value));
        CHECK(std::fabs(res.value - c.exact) <= allowed);
    }
}

TEST_CASE("integrate: non-convergence carries estimate and bound") {
    QuadratureSpec q;
    q.max_depth = 8;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-14;
    auto singular = [](double s) { return std::pow(s, -0.9); };
    try {
        integrate(singular, 0.0, 1.0, q);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.estimate()));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("gamma_fn: exact points and oracle grid") {
    CHECK(gamma_fn(1.0) == 1.0);
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-15));
    CHECK(gamma_fn(2.5) == doctest::Approx(0.75 * std::sqrt(kPi)).epsilon(1e-15));
    CHECK(gamma_fn(5.0) == 24.0);
    for (double x = 0.1; x < 20.0; x += 0.37) {
        CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
    }
    // Recurrence property Gamma(x+1) = x Gamma(x).
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> xs(0.05, 12.0);
    for (int i = 0; i < 40; ++i) {
        const double x = xs(rng);
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}

TEST_CASE("upper_gamma: closed forms, erfc oracle, recurrence") {
    CHECK(upper_gamma(2.5, 0.0) == doctest::Approx(gamma_fn(2.5)).epsilon(1e-15));
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        CHECK(upper_gamma(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-13));
        CHECK(upper_gamma(0.5, x) ==
              doctest::Approx(std::sqrt(kPi) * std::erfc(std::sqrt(x))).epsilon(1e-12));
    }
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> as(-3.0, 5.0);
    std::uniform_real_distribution<double> xs(0.05, 10.0);
    for (int i = 0; i < 60; ++i) {
        const double a = as(rng);
        const double x = xs(rng);
        if (std::fabs(a) < 1e-3) continue;  // recurrence divides by a
        const double lhs = upper_gamma(a + 1.0, x);
        const double rhs = a * upper_gamma(a, x) + std::pow(x, a) * std::exp(-x);
        CHECK(std::fabs(lhs - rhs) <= 1e-11 * (1.0 + std::fabs(lhs)));
    }
    CHECK_THROWS_AS(upper_gamma(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(upper_gamma(1.0, -0.5), std::domain_error);
}

TEST_CASE("upper_gamma: nonpositive parameters against a quadrature oracle") {
    QuadratureSpec q;
    auto oracle = [&q](double a, double x) {
        return integrate([a](double t) { return std::pow(t, a - 1.0) * std::exp(-t); }, x, 45.0,
                         q);
    };
    for (double a : {0.0, -0.5, -1.0, -1.5, -2.0, -2.7}) {
        for (double x : {0.05, 0.3, 0.8, 1.5, 4.0}) {
            const double want = oracle(a, x);
            CHECK(upper_gamma(a, x) == doctest::Approx(want).epsilon(1e-9));
        }
    }
    // The weighted tail at eps = 1/2 exactly (gamma parameter 0) stays finite.
    CHECK(std::isfinite(weighted_tail(4, 0.5, 1.0, q)));
}

TEST_CASE("weighted_tail: closed forms at eps = 0") {
    QuadratureSpec q;
    // Substitution t = s^2/4 gives I(n, 0, 0) = 2^{n-1} Gamma(n/2).
    for (int n = 2; n <= 6; ++n) {
        const double expected = std::pow(2.0, n - 1) * gamma_fn(0.5 * n);
        CHECK(weighted_tail(n, 0.0, 0.0, q) == doctest::Approx(expected).epsilon(1e-12));
    }
    // s e^{-s^2/4} has antiderivative -2 e^{-s^2/4}.
    CHECK(weighted_tail(2, 0.0, 0.0, q) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(weighted_tail(2, 0.0, 2.0, q) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-13));
}

TEST_CASE("weighted_tail: unit f-volume identity") {
    QuadratureSpec q;
    for (int n = 2; n <= 10; ++n) {
        const double value = std::pow(4.0 * kPi, -0.5 * n) * n * unit_ball_volume(n) *
                             weighted_tail(n, 0.0, 0.0, q);
        CHECK(std::fabs(value - 1.0) <= 1e-10);
    }
}

TEST_CASE("weighted_tail: monotone in r0 and in eps on the stated grids") {
    QuadratureSpec q;
    for (int n : {2, 3, 5}) {
        double prev = weighted_tail(n, 0.1, 0.0, q);
        for (double r0 : {0.5, 1.0, 2.0, 4.0}) {
            const double cur = weighted_tail(n, 0.1, r0, q);
            CHECK(cur < prev);
            prev = cur;
        }
        for (double r0 : {0.0, 0.5, 2.0}) {
            double last = weighted_tail(n, 0.0, r0, q);
            for (double eps = 0.03; eps <= 0.151; eps += 0.03) {
                const double cur = weighted_tail(n, eps, r0, q);
                CHECK(cur < last);
                last = cur;
            }
        }
    }
}

TEST_CASE("weighted_tail: route agreement and domain errors") {
    QuadratureSpec q;
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> ns(2, 8);
    std::uniform_real_distribution<double> es(0.0, 0.45);
    std::uniform_real_distribution<double> rs(0.0, 4.0);
    for (int i = 0; i < 30; ++i) {
        const WeightedTailPair pair = weighted_tail_both(ns(rng), es(rng), rs(rng), q);
        CHECK(std::fabs(pair.quadrature - pair.gamma) <= 10.0 * q.abs_tol);
    }
    CHECK_THROWS_AS(weighted_tail(1, 0.0, 0.0, q), std::domain_error);
    CHECK_THROWS_AS(weighted_tail(2, 1.0, 0.0, q), std::domain_error);   // eps >= n/2
    CHECK_THROWS_AS(weighted_tail(4, 0.5, 0.0, q), std::domain_error);   // r0 = 0 needs eps < 1/2
    CHECK_THROWS_AS(weighted_tail(2, -0.1, 0.0, q), std::domain_error);
    CHECK_NOTHROW(weighted_tail(4, 0.9, 1.5, q));  // r0 > 0 admits eps in [1/2, n/2)

    // An agreement threshold below what doubles can deliver trips the
    // consistency error, carrying both route values.
    QuadratureSpec absurd = q;
    absurd.abs_tol = 1e-30;
    try {
        weighted_tail(10, 0.0, 1.0, absurd);
        FAIL("expected ConsistencyError");
    } catch (const ConsistencyError& e) {
        CHECK(e.tolerance() == 10.0 * absurd.abs_tol);
        CHECK(std::fabs(e.first() - e.second()) > e.tolerance());
    }
}

TEST_CASE("solve_threshold: linear crossing and constant function") {
    auto linear = [](double x) { return 1.0 - x; };
    const double star = solve_threshold(linear, 0.5, Bracket(0.0, 1.0), 1e-9);
    CHECK(std::fabs(star - 0.5) <= 1e-6);
    CHECK(linear(star) >= 0.5);

    auto constant = [](double) { return 1.0; };
    CHECK(solve_threshold(constant, 0.9, Bracket(0.0, 1.0), 1e-9) == 1.0);
}

TEST_CASE("solve_threshold: infeasible reports F(lo) and target") {
    auto low = [](double x) { return 0.1 * x; };
    try {
        solve_threshold(low, 0.5, Bracket(0.0, 1.0), 1e-9);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(e.f_lo() == 0.0);
        CHECK(e.target() == 0.5);
    }
}

TEST_CASE("solve_threshold: postcondition holds for a non-monotone F") {
    auto wiggly = [](double x) { return 0.5 + 0.5 * std::cos(3.0 * kPi * x); };
    const double tol = 1e-6;
    const double star = solve_threshold(wiggly, 0.6, Bracket(1e-6, 1.0), tol);
    CHECK(wiggly(star) >= 0.6);
    if (star < 1.0) CHECK(wiggly(star * (1.0 + tol)) < 0.6);

    // Deterministic: same inputs give bitwise-identical output.
    CHECK(solve_threshold(wiggly, 0.6, Bracket(1e-6, 1.0), tol) == star);
}
