#pragma once

#include <functional>
#include <vector>

#include "fracmom/corpus.hpp"
#include "fracmom/quadrature.hpp"

namespace fracmom {

// Derived-distribution constructions and the reciprocal moment identities
// they satisfy. Every identity is verified with its two sides computed by
// independent numerical routes: the left by quadrature against the derived
// density or transform, the right from closed forms or the brute-force
// oracle. Nothing here evaluates one side twice.

/// n-th order stationary-excess (equilibrium) transform of a nonnegative
/// distribution, represented by its Laplace transform
/// n! Q_{n-1}(l) / (m_n l^n), with the l -> 0 limit fixed to 1 by the tail
/// moment series.
struct EquilibriumSpec {
    int order = 1;
    std::function<double(double)> lst;
    /// means of the successive equilibrium distributions,
    /// mean_chain[k] = m_{k+1} / ((k+1) m_k) for k = 0..order-1
    std::vector<double> mean_chain;
};

EquilibriumSpec equilibrium_lst(const DistributionSpec& spec, int n);

/// Two independently computed sides of a reciprocal identity.
struct ReciprocalPair {
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_error = 0.0;
    double rhs_error = 0.0;
    bool lhs_infinite = false;
    bool rhs_infinite = false;
};

/// E[Y^-s] for the sine-transform density g(t) = (2/pi) Im phi(t)/t against
/// E[X^s] / (Gamma(s+1) cos(s pi/2)). Requires the positivity annotation;
/// valid for |s| < 1 (analytic continuation covers s <= 0).
ReciprocalPair reciprocal_sine(const DistributionSpec& spec, double s,
                               const QuadratureConfig& cfg = {});

/// For Z with an even convex-decreasing transform phi and X ~ 1 - phi:
/// E[|Z|^-s] against E[X^s] / (Gamma(s+1) cos(s pi/2)), |s| < 1. The
/// convexity/monotonicity of phi is checked on a grid.
ReciprocalPair polya_reciprocal(const DistributionSpec& z_spec, double s,
                                const QuadratureConfig& cfg = {});

struct LengthBiasedTriple {
    double lhs = 0.0;          // E[Y^{1-s}] by derived-density quadrature
    double rhs_closed = 0.0;   // E[X^s] / (m1 Gamma(s+1) sin(s pi/2))
    double rhs_biased = 0.0;   // E[Z^{s-1}] / (Gamma(s+1) sin(s pi/2)), Z length-biased
    double lhs_error = 0.0;
    double rhs_biased_error = 0.0;
    bool rhs_biased_available = false;
};

/// Length-biased reciprocal relation, s in (0, 2).
LengthBiasedTriple length_biased_relation(const DistributionSpec& spec, double s,
                                          const QuadratureConfig& cfg = {});

/// E[Y^{n-s}] for Y ~ 1 - L_(n) against
/// n!(n-s) pi / (m_n Gamma(s+1) sin((n-s) pi)) * E[X^s], s in (n-1, n+1)
/// with the s = n constant fixed to 1/m_n by continuity.
ReciprocalPair equilibrium_reciprocal(const DistributionSpec& spec, int n, double s,
                                      const QuadratureConfig& cfg = {});

/// E[Z^-s] for Z ~ 1 - L (the exponential mixture) against
/// Gamma(1-s) E[X^s]; infinite for s >= 1.
ReciprocalPair exp_mixture_relation(const DistributionSpec& spec, double s,
                                    const QuadratureConfig& cfg = {});

/// Total mass of the sine-transform density (2/pi) Im phi(t)/t; 1 for any
/// strictly positive X.
IntegralResult sine_density_mass(const DistributionSpec& spec, const QuadratureConfig& cfg = {});

} // namespace fracmom
