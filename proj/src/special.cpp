#include "fracmom/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracmom {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_positive(double x) {
    // x >= 0.5
    double a = kLanczosCoeff[0];
    for (int i = 1; i < 9; ++i)
        a += kLanczosCoeff[i] / (x - 1.0 + i);
    double base = x - 0.5 + kLanczosG;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(base, x - 0.5) * std::exp(-base) * a;
}

} // namespace

double gamma_fn(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.5) {
        if (x == std::floor(x))
            throw std::domain_error("gamma_fn: pole at non-positive integer");
        // Reflection. sin(pi x) via the fractional part keeps accuracy for
        // large negative x.
        double s = std::sin(std::numbers::pi * x);
        return std::numbers::pi / (s * lanczos_positive(1.0 - x));
    }
    return lanczos_positive(x);
}

double gen_binomial(double s, int j) {
    if (j < 0) throw std::invalid_argument("gen_binomial: j must be nonnegative");
    double value = 1.0;
    for (int i = 0; i < j; ++i)
        value *= (s - i) / (i + 1);
    return value;
}

double factorial(int k) {
    if (k < 0 || k > 170) throw std::invalid_argument("factorial: k out of range");
    double v = 1.0;
    for (int i = 2; i <= k; ++i) v *= i;
    return v;
}

double double_factorial_odd(int k) {
    double v = 1.0;
    for (int i = 3; i <= 2 * k - 1; i += 2) v *= i;
    return v;
}

} // namespace fracmom
