#pragma once

namespace fracmom {

// Series-remainder kernels. g_n is the signed remainder of the cosine
// series after n terms, h_n of the sine series, q_n of exp(-x); all are
// nonnegative on their stated domains (h_0 = sin is the exception).
// Subtracting a Taylor polynomial from cos/sin/exp loses every digit as the
// argument goes to 0, so below the switch point n + 2 the kernels are
// evaluated as the alternating tail series of the omitted terms, truncated
// once a term drops below 1e-18 of the running sum.

/// g_n(t): even, >= 0 everywhere, ~ t^(2n+2)/(2n+2)! near 0.
double eval_g(int n, double t);

/// h_n(t) for t >= 0 (odd extension for t < 0): >= 0 when n >= 1,
/// h_0(t) = sin t.
double eval_h(int n, double t);

/// q_n(lambda) for lambda >= 0: >= 0, ~ lambda^(n+1)/(n+1)! near 0,
/// q_n' = q_{n-1} for n >= 1.
double eval_q(int n, double lambda);

// Closed-form values of the weighted half-line integrals of the kernels,
// computed from the factored forms rather than reflection identities so the
// signs stay unconditionally positive and no gamma evaluation happens next
// to a pole. Arguments outside the open validity strip are rejected.

/// integral of g_n(t)/t^(s+1) over (0, inf); requires 2n < s < 2n+2.
double lemma1_constant(int n, double s);

/// integral of h_n(t)/t^(s+1) over (0, inf); requires 2n-1 < s < 2n+1.
double lemma2_constant(int n, double s);

/// integral of q_n(l)/l^(s+1) over (0, inf); requires n < s < n+1.
double lemma4_constant(int n, double s);

namespace detail {

// Both evaluation routes, exposed so the seam between them can be tested on
// the overlap window.
double g_series(int n, double t);
double g_direct(int n, double t);
double h_series(int n, double t);
double h_direct(int n, double t);
double q_series(int n, double lambda);
double q_direct(int n, double lambda);

} // namespace detail

} // namespace fracmom
