#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "fracmom/corpus.hpp"
#include "fracmom/special.hpp"
#include "oracle_util.hpp"

using namespace fracmom;

namespace {
constexpr double kPi = std::numbers::pi;

TabulatedDensity exponential_table(int points = 4001, double hi = 40.0) {
    TabulatedDensity t;
    for (int i = 0; i < points; ++i) {
        double x = hi * i / (points - 1);
        t.xs.push_back(x);
        t.fs.push_back(std::exp(-x));
    }
    return t;
}
} // namespace

TEST_CASE("catalog: exponential") {
    auto d = get_distribution("exponential", {{"rate", 1.0}});
    auto phi = d.transforms.cf(1.0);
    // 1/(1-it) at t=1 is (1+i)/2
    CHECK(phi.real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(phi.imag() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.transforms.lst(1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.closed_moment(0.5) == doctest::Approx(gamma_fn(1.5)).epsilon(1e-13));
    CHECK(d.closed_moment(3.0) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(std::isinf(d.closed_moment(-1.5)));
}

TEST_CASE("catalog: degenerate") {
    auto d = get_distribution("degenerate", {{"c", 1.0}});
    auto phi = d.transforms.cf(2.0);
    CHECK(phi.real() == doctest::Approx(std::cos(2.0)).epsilon(1e-14));
    CHECK(phi.imag() == doctest::Approx(std::sin(2.0)).epsilon(1e-14));
    CHECK(d.closed_moment(2.7) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("catalog: gamma closed moments") {
    auto d = get_distribution("gamma", {{"alpha", 0.5}, {"beta", 1.0}});
    // frozen: Gamma(1)/Gamma(0.5) = 1/sqrt(pi)
    CHECK(d.closed_moment(0.5) == doctest::Approx(0.5641895835477563).epsilon(1e-13));
    CHECK(d.sin_positivity_flag);
    auto d3 = get_distribution("gamma", {{"alpha", 3.0}, {"beta", 2.0}});
    CHECK_FALSE(d3.sin_positivity_flag);
    CHECK(moment_k(d3, 2) == doctest::Approx(3.0 * 4.0 * 4.0).epsilon(1e-13)); // E[X^2]=a(a+1)b^2
}

TEST_CASE("catalog: unknown name and bad params are rejected") {
    CHECK_THROWS_AS(get_distribution("zeta"), std::invalid_argument);
    CHECK_THROWS_AS(get_distribution("gamma", {{"alpha", -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(get_distribution("exponential", {{"rate", 0.0}}), std::invalid_argument);
}

TEST_CASE("transform invariants: modulus bound and conjugate symmetry") {
    for (const char* name : {"exponential", "gamma", "degenerate", "uniform", "normal", "fejer"}) {
        auto d = get_distribution(name);
        CHECK(std::abs(d.transforms.cf(0.0) - std::complex<double>(1.0, 0.0)) < 1e-12);
        for (int i = 1; i <= 10000; ++i) {
            double t = 0.013 * i;
            auto v = d.transforms.cf(t);
            REQUIRE(std::abs(v) <= 1.0 + 1e-12);
            auto w = d.transforms.cf(-t);
            REQUIRE(std::abs(w - std::conj(v)) <= 1e-12);
        }
    }
    // numeric transforms are costly per point; a thinner grid covers them
    for (const char* name : {"half-cauchy", "pareto"}) {
        auto d = get_distribution(name);
        for (int i = 1; i <= 40; ++i) {
            double t = 0.7 * i;
            auto v = d.transforms.cf(t);
            REQUIRE(std::abs(v) <= 1.0 + 1e-8);
            auto w = d.transforms.cf(-t);
            REQUIRE(std::abs(w - std::conj(v)) <= 1e-9);
        }
    }
}

TEST_CASE("half-cauchy numeric transform matches its known real part") {
    auto d = get_distribution("half-cauchy");
    // E[cos(tX)] for the standard Cauchy magnitude is exp(-t)
    for (double t : {0.3, 1.0, 2.5, 6.0}) {
        CHECK(d.transforms.cf(t).real() == doctest::Approx(std::exp(-t)).epsilon(1e-7));
    }
}

TEST_CASE("laplace transforms agree with density quadrature") {
    for (const char* name : {"exponential", "gamma", "uniform"}) {
        auto d = get_distribution(name);
        for (double l : {0.1, 1.0, 10.0}) {
            IntegrandProfile p{d.density_zero_exponent, TailClass::absolutely_decaying, {}};
            auto r = integrate_halfline(
                [&](double x) { return std::exp(-l * x) * d.density(x); }, p);
            CHECK(r.value == doctest::Approx(d.transforms.lst(l)).epsilon(1e-8));
        }
    }
}

TEST_CASE("sine positivity annotation holds on a grid") {
    for (const char* name : {"exponential", "uniform", "half-cauchy"}) {
        auto d = get_distribution(name);
        if (!d.sin_positivity_flag) continue;
        int step = (std::string(name) == "half-cauchy") ? 37 : 1;
        for (int i = 1; i <= 1000; i += step) {
            double t = 0.1 * i;
            REQUIRE(d.transforms.cf(t).imag() >= -1e-12);
        }
    }
    auto g = get_distribution("gamma", {{"alpha", 1.7}, {"beta", 0.8}});
    CHECK(g.sin_positivity_flag);
    for (int i = 1; i <= 1000; ++i) {
        REQUIRE(g.transforms.cf(0.1 * i).imag() >= -1e-12);
    }
}

TEST_CASE("closed moments agree with the oracle where both are finite") {
    struct Probe {
        const char* name;
        std::map<std::string, double> params;
        std::vector<double> svals;
    };
    std::vector<Probe> probes = {
        {"exponential", {{"rate", 1.0}}, {0.3, 0.5, 1.7, 2.0, 3.4}},
        {"gamma", {{"alpha", 2.0}, {"beta", 1.0}}, {0.5, 1.5, 2.5}},
        {"gamma", {{"alpha", 0.5}, {"beta", 1.0}}, {0.25, 0.5, 1.5, -0.25}},
        {"uniform", {{"b", 1.0}}, {0.5, 1.5, -0.5}},
        {"normal", {}, {0.5, 1.0, 2.0, 3.5}},
        {"half-cauchy", {}, {0.25, 0.5, 0.75, -0.5}},
        {"pareto", {}, {0.5, 1.0, 1.4, -1.0}},
    };
    for (const auto& probe : probes) {
        auto d = get_distribution(probe.name, probe.params);
        for (double s : probe.svals) {
            auto r = oracle_moment(d, s);
            REQUIRE_FALSE(r.infinite);
            REQUIRE(r.value == doctest::Approx(d.closed_moment(s)).epsilon(1e-7));
        }
    }
}

TEST_CASE("oracle flags divergent moments") {
    auto hc = get_distribution("half-cauchy");
    CHECK(oracle_moment(hc, 1.5).infinite);
    auto pareto = get_distribution("pareto"); // tail index 1.5
    CHECK(oracle_moment(pareto, 1.6).infinite);
    CHECK_FALSE(oracle_moment(pareto, 1.3).infinite);
}

TEST_CASE("oracle handles the degenerate atom through the closed form") {
    auto d = get_distribution("degenerate", {{"c", 1.0}});
    auto r = oracle_moment(d, 2.7);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("scaled distribution keeps its transform consistent") {
    auto d = get_distribution("exponential");
    auto d2 = make_scaled(d, 2.0); // exponential with mean 2
    CHECK(d2.transforms.lst(1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(d2.closed_moment(0.5) ==
          doctest::Approx(std::pow(2.0, 0.5) * gamma_fn(1.5)).epsilon(1e-13));
    CHECK(moment_k(d2, 2) == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("ingested exponential table reproduces the transform") {
    auto spec = ingest_density_table(exponential_table());
    CHECK(spec.transforms.lst(1.0) == doctest::Approx(0.5).epsilon(1e-5));
    // the trapezoid renormalization leaves an O(h^2) offset in the
    // interpolant's exact mass
    CHECK(spec.transforms.lst(0.0) == doctest::Approx(1.0).epsilon(2e-5));
    // transform against the closed form on a t-grid
    for (double t = 0.1; t <= 20.0; t += 1.3) {
        auto v = spec.transforms.cf(t);
        std::complex<double> truth(1.0 / (1.0 + t * t), t / (1.0 + t * t));
        CHECK(std::abs(v - truth) < 2e-5);
    }
}

TEST_CASE("ingested uniform table matches the analytic transform") {
    TabulatedDensity t;
    for (int i = 0; i <= 1000; ++i) {
        t.xs.push_back(i / 1000.0);
        t.fs.push_back(1.0);
    }
    auto spec = ingest_density_table(t);
    auto truth = get_distribution("uniform", {{"b", 1.0}});
    for (double u = 0.1; u <= 20.0; u += 0.7) {
        CHECK(std::abs(spec.transforms.cf(u) - truth.transforms.cf(u)) < 1e-6);
    }
}

TEST_CASE("ingestion rejects malformed tables") {
    TabulatedDensity empty;
    CHECK_THROWS_AS(ingest_density_table(empty), std::invalid_argument);

    TabulatedDensity nonmono = exponential_table(11, 1.0);
    std::swap(nonmono.xs[3], nonmono.xs[4]);
    CHECK_THROWS_AS(ingest_density_table(nonmono), std::invalid_argument);

    TabulatedDensity negative = exponential_table(11, 1.0);
    negative.fs[5] = -0.25;
    CHECK_THROWS_AS(ingest_density_table(negative), std::invalid_argument);

    TabulatedDensity offmass = exponential_table(4001);
    for (auto& f : offmass.fs) f *= 2.0;
    CHECK_THROWS_AS(ingest_density_table(offmass), std::invalid_argument);
}

TEST_CASE("csv loader reports line numbers") {
    const char* path = "corpus_test_density.csv";
    {
        std::ofstream out(path);
        out << "x,f\n0,1\n0.5,0.6\nbroken,0.4\n";
    }
    try {
        load_density_csv(path);
        FAIL("expected a parse error");
    } catch (const CsvError& e) {
        CHECK(e.line() == 4);
    }
    {
        std::ofstream out(path);
        out << "x;f\n";
    }
    CHECK_THROWS_AS(load_density_csv(path), CsvError);
    std::remove(path);
    CHECK_THROWS_AS(load_density_csv("does_not_exist.csv"), IoError);
}

TEST_CASE("csv round trip feeds ingestion") {
    const char* path = "corpus_exp_density.csv";
    {
        std::ofstream out(path);
        out << "x,f\n";
        auto t = exponential_table(2001, 30.0);
        char buf[64];
        for (std::size_t i = 0; i < t.xs.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.12g,%.15g\n", t.xs[i], t.fs[i]);
            out << buf;
        }
    }
    auto spec = ingest_density_table(load_density_csv(path));
    CHECK(spec.transforms.lst(1.0) == doctest::Approx(0.5).epsilon(2e-5));
    std::remove(path);
}

TEST_CASE("oracle matches a hand Simpson reference") {
    auto d = get_distribution("exponential");
    auto r = oracle_moment(d, 0.5);
    // substitute x = u^2 so the reference integrand is smooth
    long double ref = oracle::simpson(
        [](long double u) { return 2.0L * u * u * expl(-u * u); }, 0.0L, 9.0L, 400000);
    CHECK(r.value == doctest::Approx(static_cast<double>(ref)).epsilon(1e-10));
    CHECK(r.value == doctest::Approx(0.8862269254527580).epsilon(1e-9));
}
