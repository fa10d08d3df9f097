#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracmom/kernels.hpp"
#include "oracle_util.hpp"

using namespace fracmom;

namespace {
constexpr double kPi = std::numbers::pi;

// Deterministic low-discrepancy point in [0, 1): golden-ratio rotation.
double lds(int i) {
    double v = i * 0.6180339887498949;
    return v - std::floor(v);
}
} // namespace

TEST_CASE("g kernel pinned values") {
    CHECK(eval_g(0, kPi) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eval_g(0, 0.0) == 0.0);
    // frozen from the long-double tail reference
    CHECK(eval_g(1, 0.1) == doctest::Approx(4.165278025766096e-06).epsilon(1e-13));
    CHECK(eval_g(1, 0.1) ==
          doctest::Approx(static_cast<double>(oracle::g_tail(1, 0.1L))).epsilon(1e-13));
    // even in t
    CHECK(eval_g(2, -1.7) == eval_g(2, 1.7));
}

TEST_CASE("h kernel pinned values") {
    CHECK(eval_h(0, kPi / 2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eval_h(1, 0.0) == 0.0);
    // frozen from the long-double tail reference; equals t - sin t at n = 1
    CHECK(eval_h(1, 0.1) == doctest::Approx(1.665833531718477e-04).epsilon(1e-13));
    CHECK(eval_h(1, 0.1) ==
          doctest::Approx(static_cast<double>(oracle::h_tail(1, 0.1L))).epsilon(1e-13));
    CHECK(eval_h(1, 0.1) == doctest::Approx(0.1 - std::sin(0.1)).epsilon(1e-12));
}

TEST_CASE("q kernel pinned values") {
    CHECK(eval_q(0, 1.0) == doctest::Approx(0.6321205588285577).epsilon(1e-14));
    CHECK(eval_q(0, 0.0) == 0.0);
    // frozen from the long-double tail reference; |exp(-1/2) - (1 - 1/2 + 1/8)|
    CHECK(eval_q(2, 0.5) == doctest::Approx(1.846934028736658e-02).epsilon(1e-13));
    CHECK(eval_q(2, 0.5) ==
          doctest::Approx(static_cast<double>(oracle::q_tail(2, 0.5L))).epsilon(1e-13));
    CHECK_THROWS_AS(eval_q(1, -0.2), std::domain_error);
}

TEST_CASE("kernels are nonnegative on a large quasi-random grid") {
    // n in 0..6, t in [0, 50]
    int bad = 0;
    const int N = 1000000;
#pragma omp parallel for reduction(+ : bad) schedule(static)
    for (int i = 0; i < N; ++i) {
        int n = static_cast<int>(7.0 * lds(2 * i + 1));
        if (n > 6) n = 6;
        double t = 50.0 * lds(2 * i + 2);
        if (eval_g(n, t) < 0.0) ++bad;
        if (eval_q(n, t) < 0.0) ++bad;
        if (n >= 1 && eval_h(n, t) < 0.0) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("derivative chains hold under central differences") {
    // g_n' = h_n, h_n' = g_{n-1}, q_n' = q_{n-1}. The step-1e-5 central
    // difference carries an h^2 f'''/6f truncation term, so points where
    // that model already exceeds a third of the tolerance are skipped
    // (small t at high order).
    const double step = 1e-5;
    const double rel = 1e-6;
    for (int n = 1; n <= 6; ++n) {
        for (double t : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
            double trunc_model = step * step / 6.0 *
                                 (2 * n + 1) * (2 * n) * (2 * n - 1) / (t * t * t);
            if (trunc_model > rel / 3.0) continue;

            double dg = (eval_g(n, t + step) - eval_g(n, t - step)) / (2 * step);
            CHECK(dg == doctest::Approx(eval_h(n, t)).epsilon(rel));

            double dh = (eval_h(n, t + step) - eval_h(n, t - step)) / (2 * step);
            CHECK(dh == doctest::Approx(eval_g(n - 1, t)).epsilon(rel));

            double dq = (eval_q(n, t + step) - eval_q(n, t - step)) / (2 * step);
            CHECK(dq == doctest::Approx(eval_q(n - 1, t)).epsilon(rel));
        }
    }
}

TEST_CASE("series and direct evaluations agree on the overlap window") {
    for (int n = 0; n <= 6; ++n) {
        for (double t = 0.5; t <= 4.0; t += 0.17) {
            CHECK(detail::g_series(n, t) == doctest::Approx(detail::g_direct(n, t)).epsilon(1e-12));
            CHECK(detail::h_series(n, t) == doctest::Approx(detail::h_direct(n, t)).epsilon(1e-12));
            CHECK(detail::q_series(n, t) == doctest::Approx(detail::q_direct(n, t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("g and h are nondecreasing for n >= 1") {
    for (int n = 1; n <= 6; ++n) {
        double prev_g = 0.0, prev_h = 0.0;
        for (double t = 0.0; t <= 40.0; t += 0.05) {
            double g = eval_g(n, t);
            double h = eval_h(n, t);
            CHECK(g >= prev_g - 1e-12 * std::max(1.0, g));
            CHECK(h >= prev_h - 1e-12 * std::max(1.0, h));
            prev_g = g;
            prev_h = h;
        }
    }
}

TEST_CASE("closed-form constants") {
    CHECK(lemma1_constant(0, 1.0) == doctest::Approx(kPi / 2).epsilon(1e-13));
    CHECK(lemma1_constant(1, 3.0) == doctest::Approx(kPi / 12).epsilon(1e-13));
    CHECK_THROWS_AS(lemma1_constant(0, 2.0), std::domain_error);

    CHECK(lemma2_constant(0, 0.5) == doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-13));
    CHECK(lemma2_constant(0, 0.0) == doctest::Approx(kPi / 2).epsilon(1e-13));
    CHECK(lemma2_constant(1, 2.0) == doctest::Approx(kPi / 4).epsilon(1e-13));
    CHECK_THROWS_AS(lemma2_constant(1, 1.0), std::domain_error);

    CHECK(lemma4_constant(0, 0.5) == doctest::Approx(2 * std::sqrt(kPi)).epsilon(1e-13));
    CHECK(lemma4_constant(1, 1.5) ==
          doctest::Approx(4.0 / 3.0 * std::sqrt(kPi)).epsilon(1e-13));
    CHECK_THROWS_AS(lemma4_constant(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(lemma4_constant(2, 1.5), std::domain_error);
}

TEST_CASE("constants stay positive across their strips") {
    for (int n = 0; n <= 3; ++n) {
        for (double frac : {0.1, 0.5, 0.9, 1.3, 1.9}) {
            double s1 = 2 * n + frac;
            if (s1 < 2 * n + 2) CHECK(lemma1_constant(n, s1) > 0.0);
        }
        for (double frac : {-0.9, -0.3, 0.3, 0.9}) {
            double s2 = 2 * n + frac;
            if (s2 > 2 * n - 1 && s2 < 2 * n + 1) CHECK(lemma2_constant(n, s2) > 0.0);
        }
        for (double frac : {0.1, 0.5, 0.9}) {
            CHECK(lemma4_constant(n, n + frac) > 0.0);
        }
    }
}
