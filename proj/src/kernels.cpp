#include "fracmom/kernels.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracmom/special.hpp"

namespace fracmom {

namespace detail {

namespace {

constexpr double kTailCutoff = 1e-18;
constexpr int kMaxTerms = 400;

void check_order(int n) {
    if (n < 0) throw std::invalid_argument("kernel order must be nonnegative");
}

// Alternating tail sum starting from `term0` with term ratio
// term *= num / ((base + 2k)(base + 2k - offset)) style updates supplied by
// the caller via lambdas would be overkill; the three kernels differ only in
// the factorial stride, so each gets its own small loop.

} // namespace

double g_series(int n, double t) {
    double u = std::abs(t);
    double u2 = u * u;
    // first tail term u^(2n+2)/(2n+2)!
    double term = 1.0;
    for (int k = 1; k <= 2 * n + 2; ++k) term *= u / k;
    if (term == 0.0) return 0.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 0; j < kMaxTerms; ++j) {
        sum += sign * term;
        int m = 2 * (n + 1 + j);
        double next = term * u2 / ((m + 1) * (m + 2));
        if (next < kTailCutoff * std::abs(sum) && next < term) break;
        term = next;
        sign = -sign;
    }
    return sum < 0.0 ? 0.0 : sum;
}

double g_direct(int n, double t) {
    double u = std::abs(t);
    if (n == 0) {
        double s = std::sin(0.5 * u);
        return 2.0 * s * s;
    }
    double poly = 0.0;
    double term = 1.0;
    double sign = 1.0;
    for (int k = 0; k <= n; ++k) {
        poly += sign * term;
        term *= u * u / ((2 * k + 1) * (2 * k + 2));
        sign = -sign;
    }
    double v = ((n % 2 == 0) ? -1.0 : 1.0) * (std::cos(u) - poly);
    return v < 0.0 ? 0.0 : v;
}

double h_series(int n, double t) {
    double u = std::abs(t);
    double u2 = u * u;
    double term = u;
    for (int k = 2; k <= 2 * n + 1; ++k) term *= u / k;
    if (term == 0.0) return 0.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 0; j < kMaxTerms; ++j) {
        sum += sign * term;
        int m = 2 * (n + j) + 1;
        double next = term * u2 / ((m + 1) * (m + 2));
        if (next < kTailCutoff * std::abs(sum) && next < term) break;
        term = next;
        sign = -sign;
    }
    if (n >= 1 && sum < 0.0) sum = 0.0;
    return t < 0.0 ? -sum : sum;
}

double h_direct(int n, double t) {
    double u = std::abs(t);
    double v;
    if (n == 0) {
        v = std::sin(u);
    } else {
        double poly = 0.0;
        double term = u;
        double sign = 1.0;
        for (int k = 1; k <= n; ++k) {
            poly += sign * term;
            term *= u * u / ((2 * k) * (2 * k + 1));
            sign = -sign;
        }
        v = ((n % 2 == 0) ? 1.0 : -1.0) * (std::sin(u) - poly);
        if (v < 0.0) v = 0.0;
    }
    return t < 0.0 ? -v : v;
}

double q_series(int n, double lambda) {
    double term = 1.0;
    for (int k = 1; k <= n + 1; ++k) term *= lambda / k;
    if (term == 0.0) return 0.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 0; j < kMaxTerms; ++j) {
        sum += sign * term;
        double next = term * lambda / (n + 2 + j);
        if (next < kTailCutoff * std::abs(sum) && next < term) break;
        term = next;
        sign = -sign;
    }
    return sum < 0.0 ? 0.0 : sum;
}

double q_direct(int n, double lambda) {
    if (n == 0) return -std::expm1(-lambda);
    double poly = 0.0;
    double term = 1.0;
    double sign = 1.0;
    for (int k = 0; k <= n; ++k) {
        poly += sign * term;
        term *= lambda / (k + 1);
        sign = -sign;
    }
    double v = ((n % 2 == 0) ? -1.0 : 1.0) * (std::exp(-lambda) - poly);
    return v < 0.0 ? 0.0 : v;
}

} // namespace detail

double eval_g(int n, double t) {
    detail::check_order(n);
    return std::abs(t) <= n + 2 ? detail::g_series(n, t) : detail::g_direct(n, t);
}

double eval_h(int n, double t) {
    detail::check_order(n);
    if (n == 0) return std::sin(t);
    return std::abs(t) <= n + 2 ? detail::h_series(n, t) : detail::h_direct(n, t);
}

double eval_q(int n, double lambda) {
    detail::check_order(n);
    if (lambda < 0.0) throw std::domain_error("eval_q: lambda must be nonnegative");
    if (n == 0) return -std::expm1(-lambda);
    return lambda <= n + 2 ? detail::q_series(n, lambda) : detail::q_direct(n, lambda);
}

double lemma1_constant(int n, double s) {
    detail::check_order(n);
    if (!(2 * n < s && s < 2 * n + 2))
        throw std::domain_error("lemma1_constant: s outside (2n, 2n+2)");
    double r = s - 2 * n; // in (0, 2), so the sine factor is positive
    return 0.5 * std::numbers::pi / (gamma_fn(s + 1.0) * std::sin(0.5 * std::numbers::pi * r));
}

double lemma2_constant(int n, double s) {
    detail::check_order(n);
    if (!(2 * n - 1 < s && s < 2 * n + 1))
        throw std::domain_error("lemma2_constant: s outside (2n-1, 2n+1)");
    double r = s - 2 * n; // in (-1, 1), so the cosine factor is positive
    return 0.5 * std::numbers::pi / (gamma_fn(s + 1.0) * std::cos(0.5 * std::numbers::pi * r));
}

double lemma4_constant(int n, double s) {
    detail::check_order(n);
    if (!(n < s && s < n + 1))
        throw std::domain_error("lemma4_constant: s outside (n, n+1)");
    // Gamma(n+1-s) / [s(s-1)...(s-n)], every factor positive on the strip.
    double denom = 1.0;
    for (int k = 0; k <= n; ++k) denom *= (s - k);
    return gamma_fn(n + 1.0 - s) / denom;
}

} // namespace fracmom
