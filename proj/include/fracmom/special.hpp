#pragma once

namespace fracmom {

/// Gamma function on the real line, Lanczos approximation (g = 7, 9 terms)
/// with the reflection formula below 0.5. Relative error is a few ulp
/// through the argument range used by the closed-form constants (|x| < 60).
double gamma_fn(double x);

/// Generalized binomial coefficient s(s-1)...(s-j+1)/j!. Exactly 1 at j = 0
/// and exactly 0 once an integer s is exhausted (j > s >= 0).
double gen_binomial(double s, int j);

/// k! as a double. Valid for k <= 170.
double factorial(int k);

/// (2k-1)!! with the empty product equal to 1.
double double_factorial_odd(int k);

} // namespace fracmom
