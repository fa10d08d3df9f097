#pragma once

#include <optional>
#include <vector>

#include "fracmom/corpus.hpp"
#include "fracmom/quadrature.hpp"

namespace fracmom {

// Translated fractional moments E[(X+a)^s] and the finite machinery built
// on them: discrimination of two distributions along a separating shift
// sequence, and recovery of integer moments from the large-shift expansion.
// No finite computation certifies equality of distributions; the reports
// here are evidence of distinctness, never proof of sameness.

enum class MuntzCondition {
    /// a_k -> infinity with divergent reciprocal sum
    divergent_reciprocal_sum,
    /// a_k -> a_0 in (0, infinity)
    positive_limit,
    /// a_k -> 0 with divergent sum
    vanishing_divergent_sum,
};

struct MuntzSequence {
    MuntzCondition condition;
    std::vector<double> values; // finite generated prefix, positive, distinct
};

enum class SequenceKind { primes, reciprocal_primes, harmonic_to_limit };

/// primes -> divergent reciprocal sum; reciprocal_primes -> vanishing with
/// divergent sum; harmonic_to_limit -> a0 + 1/k, positive limit a0.
MuntzSequence make_sequence(SequenceKind kind, int K, double a0 = 1.0);

/// Caller-declared condition; entries must be positive and distinct.
MuntzSequence make_custom_sequence(std::vector<double> values, MuntzCondition condition);

/// E[(X+a)^s], a >= 0. Direct density quadrature when a density exists,
/// otherwise through the shifted Laplace transform exp(-a l) L(l).
double translated_moment(const DistributionSpec& spec, double s, double a,
                         const QuadratureConfig& cfg = {});

/// The shifted-transform route on its own (for route-consistency checks).
double translated_moment_lst_route(const DistributionSpec& spec, double s, double a,
                                   const QuadratureConfig& cfg = {});

struct DiscriminationReport {
    double max_discrepancy = 0.0;
    /// 1-based index of the first shift whose discrepancy exceeds the
    /// tolerance; empty when none does.
    std::optional<int> first_exceeding_index;
    std::vector<double> discrepancies;
};

/// Per-shift |E[(X_A+a_k)^s] - E[(X_B+a_k)^s]| over the sequence prefix
/// (with the doubled-shift companion when s > 1). Requires the base moments
/// to match within tol; evidence of distinctness, not proof.
DiscriminationReport discriminate(const DistributionSpec& spec_a, const DistributionSpec& spec_b,
                                  double s, const MuntzSequence& seq, double tol,
                                  const QuadratureConfig& cfg = {});

struct ExtractionResult {
    std::vector<double> moments;         // m_1 .. m_n estimates
    std::vector<double> error_estimates; // extrapolation-table differences
    bool converged = true;
};

/// Recover m_1..m_n from translated moments on a geometric shift schedule:
/// the combination a^{l+1}(2 a^-s E[(X+a)^s] - 2^{l+1} (2a)^-s E[(X+2a)^s])
/// tends to a known linear form in the moments; the already-extracted
/// orders are subtracted and the remainder is Richardson-extrapolated in
/// 1/a.
ExtractionResult extract_integer_moments(const DistributionSpec& spec, double s, int n,
                                         const std::vector<double>& a_schedule,
                                         const QuadratureConfig& cfg = {});

/// 32, 64, ..., 4096.
std::vector<double> default_extraction_schedule();

namespace detail {

/// a^-s E[(X+a)^s] computed natively as E[(1 + X/a)^s]; avoids the large
/// power round trip that the extraction combinations would amplify.
double translated_ratio(const DistributionSpec& spec, double s, double a,
                        const QuadratureConfig& cfg);

} // namespace detail

} // namespace fracmom
