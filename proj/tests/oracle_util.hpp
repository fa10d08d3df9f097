#pragma once

// Test-side reference computations, kept independent of the library's
// evaluation paths on purpose. Kernel references sum the alternating tail
// in long double; integral references use plain composite Simpson.

#include <cmath>
#include <functional>

namespace oracle {

inline long double g_tail(int n, long double t) {
    long double term = 1.0L;
    for (int k = 1; k <= 2 * n + 2; ++k) term *= t / k;
    long double sum = 0.0L, sign = 1.0L;
    for (int j = 0; j < 500; ++j) {
        sum += sign * term;
        int m = 2 * (n + 1 + j);
        long double next = term * t * t / ((m + 1.0L) * (m + 2.0L));
        if (next < 1e-24L * fabsl(sum)) break;
        term = next;
        sign = -sign;
    }
    return sum;
}

inline long double h_tail(int n, long double t) {
    long double term = t;
    for (int k = 2; k <= 2 * n + 1; ++k) term *= t / k;
    long double sum = 0.0L, sign = 1.0L;
    for (int j = 0; j < 500; ++j) {
        sum += sign * term;
        int m = 2 * (n + j) + 1;
        long double next = term * t * t / ((m + 1.0L) * (m + 2.0L));
        if (next < 1e-24L * fabsl(sum)) break;
        term = next;
        sign = -sign;
    }
    return sum;
}

inline long double q_tail(int n, long double x) {
    long double term = 1.0L;
    for (int k = 1; k <= n + 1; ++k) term *= x / k;
    long double sum = 0.0L, sign = 1.0L;
    for (int j = 0; j < 500; ++j) {
        sum += sign * term;
        long double next = term * x / (n + 2.0L + j);
        if (next < 1e-24L * fabsl(sum)) break;
        term = next;
        sign = -sign;
    }
    return sum;
}

/// Composite Simpson over [a, b] with N (even) intervals, long double.
inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double b, int N = 200000) {
    if (N % 2) ++N;
    long double h = (b - a) / N;
    long double s = f(a) + f(b);
    for (int i = 1; i < N; ++i) s += f(a + i * h) * ((i % 2) ? 4.0L : 2.0L);
    return s * h / 3.0L;
}

} // namespace oracle
