#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace fracmom {

// Adaptive integration on (0, inf) for integrands with an algebraic
// endpoint at 0 and decaying (possibly oscillatory) tails.
//
// The layout of a half-line integral here is always the same three stages:
//   1. a graded dyadic descent toward 0 that either converges, reports an
//      endpoint divergence, or closes the remaining mass with a power-law
//      model folded into the error estimate;
//   2. partial integrals over a doubling truncation schedule, phase-locked
//      to whole periods when an oscillation scale is declared so that the
//      truncation remainders stay smooth in the schedule index;
//   3. Wynn-epsilon acceleration of the partial-integral sequence when the
//      plain tail is slow.
// Conditionally convergent integrals instead use an arithmetic half-period
// schedule whose partial sums are accelerated (improper mode).
//
// Divergence cannot be proven numerically. Two heuristics raise
// divergent_suspected: partial integrals growing by the configured factor
// over three consecutive schedule steps, and same-sign increments whose
// ratio stays above 0.97 (which catches logarithmic divergence that the
// growth test misses). Both are heuristics and are reported as suspicion,
// never as proof.

enum class TailClass {
    absolutely_decaying,
    oscillatory_conditional,
    polynomial_bounded,
};

struct IntegrandProfile {
    /// Expected power alpha with f ~ c * t^alpha as t -> 0+. Must be > -1
    /// for integrals claimed convergent at the origin.
    double zero_exponent_hint = 0.0;
    TailClass tail_class = TailClass::absolutely_decaying;
    /// Dominant angular frequency of the integrand's oscillation, when one
    /// exists (the integrand behaves like trig(scale * t) at large t).
    std::optional<double> oscillation_scale;
};

enum class IntegralStatus { converged, improper_limit, divergent_suspected };

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    IntegralStatus status = IntegralStatus::converged;
    int panels_used = 0;
    long function_evals = 0;

    bool usable() const { return status != IntegralStatus::divergent_suspected; }
};

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    /// Cap on adaptive panels per schedule increment.
    int max_panels = 4096;
    /// Truncation points grow as 2^j for j in [schedule_min_exponent,
    /// schedule_max_exponent].
    int schedule_min_exponent = 4;
    int schedule_max_exponent = 24;
    double divergence_growth_factor = 1.5;
};

/// Thrown when the integrand produces a non-finite value; carries the
/// offending abscissa.
class NonFiniteError : public std::runtime_error {
public:
    explicit NonFiniteError(double abscissa);
    double abscissa() const { return abscissa_; }

private:
    double abscissa_;
};

using Integrand = std::function<double(double)>;

/// Absolutely convergent integral of f over (0, inf).
IntegralResult integrate_halfline(const Integrand& f, const IntegrandProfile& profile,
                                  const QuadratureConfig& cfg = {});

/// Improper (Abel-type) limit of the truncated integrals of f over (0, T),
/// for oscillatory conditionally convergent tails.
IntegralResult integrate_improper(const Integrand& f, const QuadratureConfig& cfg = {});
IntegralResult integrate_improper(const Integrand& f, const IntegrandProfile& profile,
                                  const QuadratureConfig& cfg = {});

/// Whether panel batches are evaluated with OpenMP. The reduction order is
/// fixed either way, so results are bit-identical; this only changes who
/// does the work.
bool parallel_enabled();
void set_parallel_enabled(bool enabled);

namespace detail {

struct IntervalResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
    long evals = 0;
    bool tol_met = true;
};

/// Deterministic breadth-first adaptive Gauss-Kronrod integration over
/// [a, b]. `preseed` fixes the initial uniform partition (>= 1); results are
/// reduced in interval order with compensated summation regardless of how
/// panels were evaluated.
IntervalResult integrate_interval(const Integrand& f, double a, double b, double abs_tol,
                                  int max_panels, int preseed, bool parallel);

struct EndpointResult {
    double value = 0.0;
    double error = 0.0;
    bool divergent = false;
    int panels = 0;
    long evals = 0;
};

/// Graded dyadic descent over (0, top]: converges, closes the remaining
/// mass with a geometric model folded into the error, or flags an endpoint
/// divergence. `outer_scale` sets the relative-tolerance scale.
EndpointResult integrate_endpoint(const Integrand& f, double top, double outer_scale,
                                  const QuadratureConfig& cfg, bool parallel);

/// Half-line integral starting at `start` > 0, stages 2-3 only (the caller
/// owns (0, start]).
IntegralResult integrate_tail(const Integrand& f, double start, const IntegrandProfile& profile,
                              const QuadratureConfig& cfg);

} // namespace detail

} // namespace fracmom
