#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracmom/engine.hpp"
#include "fracmom/special.hpp"

using namespace fracmom;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("absolute moments from the transform") {
    auto normal = get_distribution("normal");
    auto r = abs_moment_cf(normal, 1.0);
    CHECK_FALSE(r.infinite);
    CHECK(r.value == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-6));

    auto deg = get_distribution("degenerate", {{"c", 1.0}});
    CHECK(abs_moment_cf(deg, 0.5).value == doctest::Approx(1.0).epsilon(1e-6));

    auto expd = get_distribution("exponential");
    auto r25 = abs_moment_cf(expd, 2.5, 1);
    CHECK(r25.value == doctest::Approx(gamma_fn(3.5)).epsilon(1e-6));
    CHECK(std::abs(r25.value - gamma_fn(3.5)) <= 10.0 * r25.error_estimate + 1e-9);
}

TEST_CASE("strip boundaries are rejected") {
    auto expd = get_distribution("exponential");
    CHECK_THROWS_AS(abs_moment_cf(expd, 2.0, 0), std::domain_error);
    CHECK_THROWS_AS(moment_lst(expd, 2.0), std::domain_error);
    CHECK_THROWS_AS(moment_nonneg_cf(expd, 3.0, 1), std::domain_error);
}

TEST_CASE("nonnegative-support moments from the imaginary part") {
    auto expd = get_distribution("exponential");
    CHECK(moment_nonneg_cf(expd, 0.5).value == doctest::Approx(gamma_fn(1.5)).epsilon(1e-6));

    auto deg = get_distribution("degenerate", {{"c", 1.0}});
    CHECK(moment_nonneg_cf(deg, 0.5).value == doctest::Approx(1.0).epsilon(1e-6));

    auto g21 = get_distribution("gamma", {{"alpha", 2.0}, {"beta", 1.0}});
    CHECK(moment_nonneg_cf(g21, 2.5).value ==
          doctest::Approx(gamma_fn(4.5)).epsilon(1e-5));

    auto normal = get_distribution("normal");
    CHECK_THROWS_AS(moment_nonneg_cf(normal, 0.5), std::invalid_argument);
}

TEST_CASE("the sine integral is pi/2 regardless of the distribution") {
    for (auto& [name, params] :
         std::vector<std::pair<std::string, std::map<std::string, double>>>{
             {"exponential", {{"rate", 1.0}}},
             {"gamma", {{"alpha", 0.5}, {"beta", 2.0}}},
             {"uniform", {{"b", 1.0}}},
         }) {
        auto d = get_distribution(name, params);
        auto r = sine_integral_identity(d);
        CHECK(r.status != IntegralStatus::divergent_suspected);
        CHECK(r.value == doctest::Approx(kPi / 2).epsilon(1e-5));
    }
}

TEST_CASE("moments from the Laplace transform") {
    auto expd = get_distribution("exponential");
    auto r = moment_lst(expd, 0.5);
    CHECK(r.value == doctest::Approx(gamma_fn(1.5)).epsilon(1e-7));

    auto g21 = get_distribution("gamma", {{"alpha", 2.0}, {"beta", 1.0}});
    CHECK(moment_lst(g21, 1.5).value == doctest::Approx(gamma_fn(3.5)).epsilon(1e-6));

    auto pareto = get_distribution("pareto");
    CHECK(moment_lst(pareto, 1.6).infinite);
}

TEST_CASE("negative moments through the Laplace transform") {
    auto expd = get_distribution("exponential");
    CHECK(negative_moment_lst(expd, 0.5).value ==
          doctest::Approx(gamma_fn(0.5)).epsilon(1e-7));

    auto deg = get_distribution("degenerate", {{"c", 1.0}});
    CHECK(negative_moment_lst(deg, 2.0).value == doctest::Approx(1.0).epsilon(1e-7));

    // frozen: Gamma(0.25)/Gamma(0.5)
    auto g05 = get_distribution("gamma", {{"alpha", 0.5}, {"beta", 1.0}});
    CHECK(negative_moment_lst(g05, 0.25).value ==
          doctest::Approx(2.045531344226337).epsilon(1e-7));

    // E[X^-1] for the unit exponential diverges
    CHECK(negative_moment_lst(expd, 1.0).infinite);
}

TEST_CASE("series coefficient route for negative moments") {
    auto expd = get_distribution("exponential");
    auto cfn = coefficient_function_for(expd);
    REQUIRE(cfn.has_value());
    auto r = ramanujan_negative_moment(*cfn, 0.5);
    CHECK(r.value == doctest::Approx(gamma_fn(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(ramanujan_negative_moment(*cfn, cfn->delta), std::domain_error);

    auto g05 = get_distribution("gamma", {{"alpha", 0.5}, {"beta", 1.0}});
    auto cg = coefficient_function_for(g05);
    REQUIRE(cg.has_value());
    CHECK(ramanujan_negative_moment(*cg, 0.25).value ==
          doctest::Approx(2.045531344226337).epsilon(1e-12));
    // cross-checkable against the transform integral
    CHECK(ramanujan_negative_moment(*cg, 0.25).value ==
          doctest::Approx(negative_moment_lst(g05, 0.25).value).epsilon(1e-7));
}

TEST_CASE("mean from the transform derivative") {
    auto normal = get_distribution("normal");
    auto rn = abs_mean_cf_derivative(normal);
    CHECK(rn.value == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-4));
    REQUIRE(rn.cross_value.has_value());
    CHECK(*rn.cross_value == doctest::Approx(rn.value).epsilon(1e-4));

    auto expd = get_distribution("exponential");
    CHECK(abs_mean_cf_derivative(expd).value == doctest::Approx(1.0).epsilon(1e-4));

    auto deg0 = get_distribution("degenerate", {{"c", 0.0}});
    CHECK(abs_mean_cf_derivative(deg0).value == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("distribution function by transform inversion") {
    auto expd = get_distribution("exponential");
    double truth = -std::expm1(-1.0);
    CHECK(cdf_from_cf(expd, 1.0, CdfMethod::eq3).value == doctest::Approx(truth).epsilon(1e-5));
    CHECK(cdf_from_cf(expd, 1.0, CdfMethod::eq4).value == doctest::Approx(truth).epsilon(1e-5));
    CHECK(cdf_from_cf(expd, 1.0, CdfMethod::eq2).value == doctest::Approx(truth).epsilon(1e-5));

    auto normal = get_distribution("normal");
    CHECK(cdf_from_cf(normal, 0.0, CdfMethod::eq2).value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS_AS(cdf_from_cf(normal, 0.0, CdfMethod::eq3), std::invalid_argument);
}

TEST_CASE("inversion methods agree pairwise at continuity points") {
    for (auto& [name, params] :
         std::vector<std::pair<std::string, std::map<std::string, double>>>{
             {"exponential", {{"rate", 1.0}}},
             {"gamma", {{"alpha", 2.0}, {"beta", 1.0}}},
             {"uniform", {{"b", 1.0}}},
         }) {
        auto d = get_distribution(name, params);
        for (double q : {0.15, 0.35, 0.55, 0.75, 0.95}) {
            double x = q * (std::isfinite(d.support_upper) ? d.support_upper : 4.0);
            double f2 = cdf_from_cf(d, x, CdfMethod::eq2).value;
            double f3 = cdf_from_cf(d, x, CdfMethod::eq3).value;
            double f4 = cdf_from_cf(d, x, CdfMethod::eq4).value;
            CHECK(std::abs(f2 - f3) < 1e-4);
            CHECK(std::abs(f3 - f4) < 1e-4);
            CHECK(std::abs(f2 - f4) < 1e-4);
            if (d.cdf) CHECK(f3 == doctest::Approx(d.cdf(x)).epsilon(2e-4));
        }
    }
}

TEST_CASE("inversion approaches 0 and 1 monotonically at the grid ends") {
    auto normal = get_distribution("normal");
    double prev = -1.0;
    for (double x = -8.0; x <= 8.0; x += 1.0) {
        double f = cdf_from_cf(normal, x, CdfMethod::eq2).value;
        CHECK(f >= prev - 5e-5);
        prev = f;
    }
    CHECK(cdf_from_cf(normal, -8.0, CdfMethod::eq2).value < 1e-3);
    CHECK(cdf_from_cf(normal, 8.0, CdfMethod::eq2).value > 0.999);
}

TEST_CASE("scaling law for absolute moments") {
    auto expd = get_distribution("exponential");
    for (double c : {0.5, 2.0, 10.0}) {
        auto scaled = make_scaled(expd, c);
        for (double s : {0.5, 1.5}) {
            auto a = abs_moment_cf(expd, s);
            auto b = abs_moment_cf(scaled, s);
            double lhs = b.value;
            double rhs = std::pow(c, s) * a.value;
            CHECK(std::abs(lhs - rhs) <=
                  10.0 * (b.error_estimate + std::pow(c, s) * a.error_estimate) + 1e-7);
        }
    }
}

TEST_CASE("transform paths agree with each other and the closed form") {
    struct Probe {
        const char* name;
        std::map<std::string, double> params;
        double s;
    };
    for (const auto& probe : std::vector<Probe>{
             {"exponential", {{"rate", 1.0}}, 0.7},
             {"exponential", {{"rate", 1.0}}, 2.5},
             {"gamma", {{"alpha", 2.0}, {"beta", 1.0}}, 1.5},
             {"uniform", {{"b", 1.0}}, 0.5},
         }) {
        auto d = get_distribution(probe.name, probe.params);
        double truth = d.closed_moment(probe.s);
        auto r1 = abs_moment_cf(d, probe.s);
        auto r2 = moment_nonneg_cf(d, probe.s);
        auto r5 = moment_lst(d, probe.s);
        CHECK(r1.value == doctest::Approx(truth).epsilon(1e-6));
        CHECK(r2.value == doctest::Approx(truth).epsilon(1e-6));
        CHECK(r5.value == doctest::Approx(truth).epsilon(1e-6));
        CHECK(std::abs(r1.value - r2.value) <=
              10.0 * (r1.error_estimate + r2.error_estimate) + 1e-9);
        CHECK(std::abs(r1.value - r5.value) <=
              10.0 * (r1.error_estimate + r5.error_estimate) + 1e-9);
    }
}

TEST_CASE("kernel-expectation route agrees with the residual route") {
    for (auto& [name, params] :
         std::vector<std::pair<std::string, std::map<std::string, double>>>{
             {"exponential", {{"rate", 1.0}}},
             {"half-cauchy", {}},
         }) {
        auto d = get_distribution(name, params);
        double s = 0.6;
        auto r = abs_moment_cf(d, s, {}, true);
        REQUIRE(r.cross_value.has_value());
        double tol = r.error_estimate + *r.cross_error + 1e-9;
        CHECK(std::abs(r.value - *r.cross_value) <= tol);
    }
}

TEST_CASE("divergent moments propagate the infinity marker on every path") {
    auto hc = get_distribution("half-cauchy");
    CHECK(abs_moment_cf(hc, 1.5).infinite);
    CHECK(moment_nonneg_cf(hc, 1.5).infinite);
    CHECK(moment_lst(hc, 1.5).infinite);

    auto pareto = get_distribution("pareto");
    CHECK(abs_moment_cf(pareto, 1.6).infinite);
    CHECK(moment_nonneg_cf(pareto, 1.6).infinite);
    CHECK(moment_lst(pareto, 1.6).infinite);
}

TEST_CASE("half-cauchy finite moments are reproduced below the tail index") {
    auto hc = get_distribution("half-cauchy");
    for (double s : {0.25, 0.5}) {
        double truth = hc.closed_moment(s);
        CHECK(abs_moment_cf(hc, s).value == doctest::Approx(truth).epsilon(1e-6));
        CHECK(moment_lst(hc, s).value == doctest::Approx(truth).epsilon(1e-6));
    }
}
