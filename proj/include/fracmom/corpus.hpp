#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracmom/moment_result.hpp"
#include "fracmom/quadrature.hpp"

namespace fracmom {

enum class Support { real_line, nonnegative, positive };

/// Evaluators for a distribution's Fourier transform phi(t) and/or
/// Laplace transform L(lambda), plus support metadata. At least one of
/// cf/lst is present; cf(0) = 1 and |cf| <= 1, lst(0) = 1 and lst is
/// nonincreasing.
struct TransformPair {
    std::function<std::complex<double>(double)> cf;
    std::function<std::complex<double>(double)> cf_derivative;
    std::function<double(double)> lst;
    Support support = Support::nonnegative;
    /// Dominant ringing frequency of the transform, when the distribution
    /// has an atom or a support edge that makes phi oscillate persistently.
    std::optional<double> oscillation_scale;
};

/// A catalog entry: transforms plus whatever analytic ground truth the
/// family admits. closed_moment(s) returns E[|X|^s] with +infinity as the
/// marker for divergent moments. integer_moments holds signed moments
/// m_1..m_K (also with +/-infinity markers).
struct DistributionSpec {
    std::string name;
    std::map<std::string, double> params;
    TransformPair transforms;
    std::function<double(double)> density;       // may be null
    std::function<double(double)> cdf;           // may be null
    std::function<double(double)> closed_moment; // may be null
    std::vector<double> integer_moments;
    bool sin_positivity_flag = false;
    /// f ~ c x^e as x -> 0+ inside the support (0 when irrelevant).
    double density_zero_exponent = 0.0;
    /// Persistent oscillation frequency of the density itself, if any.
    std::optional<double> density_oscillation;
    /// inf of the support (0 unless the mass starts higher).
    double support_lower = 0.0;
    /// sup of the support, +infinity when unbounded.
    double support_upper = 0.0;
};

/// Signed integer moment m_k (k >= 0); falls back to the brute-force
/// oracle for nonnegative-support entries when the list runs out.
double moment_k(const DistributionSpec& spec, int k);

/// Catalog lookup. Known names: exponential (rate), gamma (alpha, beta),
/// degenerate (c), uniform (b), normal, half-cauchy, pareto (alpha, xm),
/// fejer.
DistributionSpec get_distribution(const std::string& name,
                                  const std::map<std::string, double>& params = {});

/// The distribution of c*X.
DistributionSpec make_scaled(const DistributionSpec& spec, double c);

struct TabulatedDensity {
    std::vector<double> xs;
    std::vector<double> fs;
    /// How far the raw trapezoid mass may sit from 1 before ingestion
    /// refuses the table.
    double normalization_tolerance = 1e-2;
};

class CsvError : public std::runtime_error {
public:
    CsvError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Two-column CSV with header `x,f`; parse errors cite the line number.
TabulatedDensity load_density_csv(const std::string& path);

/// Build a numeric catalog entry from a tabulated density. The table is
/// renormalized by its trapezoid mass; transforms evaluate the
/// interpolant's Fourier/Laplace integrals in closed form per piece.
DistributionSpec ingest_density_table(const TabulatedDensity& table);

/// Brute-force E[|X|^s] by direct quadrature against the density (the
/// ground truth every formula path is compared to).
MomentResult oracle_moment(const DistributionSpec& spec, double s,
                           const QuadratureConfig& cfg = {});

} // namespace fracmom
