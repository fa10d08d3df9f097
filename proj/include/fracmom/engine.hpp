#pragma once

#include <optional>

#include "fracmom/corpus.hpp"
#include "fracmom/moment_result.hpp"
#include "fracmom/quadrature.hpp"

namespace fracmom {

// Fractional moments straight from the transforms. Every operation here is
// a constant times a half-line integral of a residual transform: the
// transform minus the head of its moment expansion, divided by a power.
//
// The residual is a difference of O(1) quantities with true size
// O(t^(next order)), so direct evaluation below t ~ 1 fabricates digits.
// The integral is therefore split at an inner boundary (0.5): on the inner
// piece the residual is replaced by its tail moment expansion, whose
// partial sums bracket the truth (the remainder after J terms is again a
// residual of the same family and is nonnegative), or by the direct
// expectation of the series-evaluated kernel when a density is available.
// Whatever part of the inner mass cannot be pinned down is folded into the
// error estimate, never into the value.

/// Analytic coefficient function of a Laplace transform's power series:
/// L(l) = sum phi(k) (-l)^k / k!, analytic for Re z >= -delta.
struct CoefficientFunction {
    std::function<double(double)> evaluator;
    double delta = 0.5; // in (0, 1)
};

/// E[|X|^s] from the Fourier transform, valid on 2n < s < 2n+2 with
/// n = floor(s/2) by default. Requires the even moments m_0..m_2n.
/// Divergence surfaces as the infinity marker, not as an error.
MomentResult abs_moment_cf(const DistributionSpec& spec, double s, std::optional<int> n = {},
                           bool with_cross_check = false, const QuadratureConfig& cfg = {});

/// Same quantity through the direct kernel-expectation route (density
/// required); independent of the residual route and cheaper to trust near
/// zero but costlier in the tail, so its estimate is wider.
MomentResult abs_moment_cf_expectation(const DistributionSpec& spec, double s,
                                       std::optional<int> n = {},
                                       const QuadratureConfig& cfg = {});

/// E[X^s] for nonnegative X from Im phi. Uses the direct imaginary-part
/// form on s in (0,1) and the odd-moment residual on s in (2n-1, 2n+1).
MomentResult moment_nonneg_cf(const DistributionSpec& spec, double s, std::optional<int> n = {},
                              const QuadratureConfig& cfg = {});

/// Integral of Im phi(t)/t over (0, inf): pi/2 for every X > 0.
IntegralResult sine_integral_identity(const DistributionSpec& spec,
                                      const QuadratureConfig& cfg = {});

/// E[X^s] for nonnegative X from the Laplace transform, n = floor(s);
/// integer s is rejected (the constant has a pole there).
MomentResult moment_lst(const DistributionSpec& spec, double s,
                        const QuadratureConfig& cfg = {});

/// E[X^-s] for positive X: integral of l^(s-1) L(l) / Gamma(s).
MomentResult negative_moment_lst(const DistributionSpec& spec, double s,
                                 const QuadratureConfig& cfg = {});

/// E[X^-s] = phi(-s) evaluated from the coefficient function, 0 < s < delta.
MomentResult ramanujan_negative_moment(const CoefficientFunction& cfn, double s);

/// Coefficient function for catalog families that admit one in closed form
/// (exponential, gamma, degenerate).
std::optional<CoefficientFunction> coefficient_function_for(const DistributionSpec& spec);

/// E|X| from the transform derivative: -(2/pi) integral of Re phi'(t)/t.
/// Cross-checked against abs_moment_cf at s = 1 when possible.
MomentResult abs_mean_cf_derivative(const DistributionSpec& spec,
                                    const QuadratureConfig& cfg = {});

enum class CdfMethod { eq2, eq3, eq4 };

struct CdfResult {
    double value = 0.0;
    bool clamped = false;
    IntegralResult diag;
};

/// Distribution function at a continuity point x by transform inversion.
/// eq2 works on the whole line; eq3/eq4 require nonnegative support.
CdfResult cdf_from_cf(const DistributionSpec& spec, double x, CdfMethod method,
                      const QuadratureConfig& cfg = {});

const char* cdf_method_name(CdfMethod m);
const char* cdf_method_formula_ref(CdfMethod m);

namespace detail {

enum class ResidualKind { G, H, Q };

/// Residual transform value at one point, by direct subtraction. Safe only
/// away from zero.
double residual_direct(ResidualKind kind, const DistributionSpec& spec, int n, double t);

/// E[kernel_n(t X)] by quadrature against the density.
IntegralResult kernel_expectation(ResidualKind kind, const DistributionSpec& spec, int n,
                                  double t, const QuadratureConfig& cfg);

struct InnerRegion {
    double value = 0.0;
    double error = 0.0;
    bool divergent = false;
    bool usable = false;
    int panels = 0;
    long evals = 0;
};

/// Inner-piece integral of residual/t^(s+1) over (0, split] via the ladder:
/// moment tail series (bracketed), kernel expectation, power-law model.
InnerRegion inner_region(ResidualKind kind, const DistributionSpec& spec, int n, double s,
                         double split, double outer_scale, const QuadratureConfig& cfg);

} // namespace detail

} // namespace fracmom
