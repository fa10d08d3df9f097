#include "fracmom/relations.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "fracmom/engine.hpp"
#include "fracmom/special.hpp"

namespace fracmom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// E[X^s] from the closed form when the family has one, otherwise from the
// brute-force oracle.
double base_moment(const DistributionSpec& spec, double s, double& err, bool& infinite) {
    err = 0.0;
    infinite = false;
    if (spec.closed_moment) {
        double v = spec.closed_moment(s);
        if (std::isinf(v)) {
            infinite = true;
            return 0.0;
        }
        return v;
    }
    auto r = oracle_moment(spec, s);
    infinite = r.infinite;
    err = r.error_estimate;
    return r.value;
}

} // namespace

EquilibriumSpec equilibrium_lst(const DistributionSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("equilibrium_lst: order must be >= 1");
    double mn = moment_k(spec, n);
    if (!(mn > 0.0) || std::isinf(mn))
        throw std::invalid_argument("equilibrium_lst: m_n must be finite and positive");

    EquilibriumSpec eq;
    eq.order = n;
    for (int k = 0; k < n; ++k)
        eq.mean_chain.push_back(moment_k(spec, k + 1) / ((k + 1) * moment_k(spec, k)));

    auto base = std::make_shared<DistributionSpec>(spec);
    eq.lst = [base, n, mn](double l) {
        if (l < 0.0) throw std::domain_error("equilibrium transform: negative argument");
        if (l == 0.0) return 1.0; // continuity value
        if (l <= 0.5) {
            // tail moment series of Q_{n-1}(l)/l^n; exact at l = 0
            double sum = 0.0;
            double sign = 1.0;
            double lj = 1.0;
            for (int j = 0; j < 200; ++j) {
                double m = moment_k(*base, n + j);
                if (std::isinf(m)) break;
                double term = m * lj / factorial(n + j);
                sum += sign * term;
                if (j > 2 && std::abs(term) < 1e-17 * std::abs(sum)) break;
                sign = -sign;
                lj *= l;
            }
            return factorial(n) * sum / mn;
        }
        double q = detail::residual_direct(detail::ResidualKind::Q, *base, n - 1, l);
        return factorial(n) * q / (mn * std::pow(l, n));
    };
    return eq;
}

ReciprocalPair reciprocal_sine(const DistributionSpec& spec, double s,
                               const QuadratureConfig& cfg) {
    if (spec.transforms.support != Support::positive)
        throw std::invalid_argument("reciprocal_sine: requires strictly positive support");
    if (!spec.sin_positivity_flag)
        throw std::domain_error(
            "reciprocal_sine: sine positivity not asserted for this distribution");
    if (!(std::abs(s) < 1.0))
        throw std::domain_error("reciprocal_sine: |s| must be below 1");
    if (!spec.transforms.cf) throw std::invalid_argument("reciprocal_sine: transform required");

    ReciprocalPair pair;
    double base_err = 0.0;
    double base = base_moment(spec, s, base_err, pair.rhs_infinite);
    if (!pair.rhs_infinite) {
        double c = gamma_fn(s + 1.0) * std::cos(0.5 * kPi * s);
        pair.rhs = base / c;
        pair.rhs_error = base_err / c;
    }

    Integrand f = [&](double t) {
        return spec.transforms.cf(t).imag() / std::pow(t, s + 1.0);
    };
    IntegrandProfile p{-s, TailClass::polynomial_bounded, spec.transforms.oscillation_scale};
    auto ir = integrate_halfline(f, p, cfg);
    if (ir.status == IntegralStatus::divergent_suspected) {
        pair.lhs_infinite = true;
    } else {
        pair.lhs = (2.0 / kPi) * ir.value;
        pair.lhs_error = (2.0 / kPi) * ir.error_estimate;
    }
    return pair;
}

ReciprocalPair polya_reciprocal(const DistributionSpec& z_spec, double s,
                                const QuadratureConfig& cfg) {
    if (!z_spec.transforms.cf) throw std::invalid_argument("polya_reciprocal: transform required");
    if (!(std::abs(s) < 1.0)) throw std::domain_error("polya_reciprocal: |s| must be below 1");

    // Finite check that the transform is even, real, decreasing and convex
    // on a grid (1 at zero, nonnegative).
    {
        double prev = 1.0, prevprev = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double t = 0.04 * i;
            auto v = z_spec.transforms.cf(t);
            if (std::abs(v.imag()) > 1e-10)
                throw std::invalid_argument("polya_reciprocal: transform is not real");
            double re = v.real();
            if (i == 0 && std::abs(re - 1.0) > 1e-12)
                throw std::invalid_argument("polya_reciprocal: transform is not 1 at zero");
            if (re < -1e-12 || re > prev + 1e-12)
                throw std::invalid_argument("polya_reciprocal: transform not decreasing");
            if (i >= 2 && prevprev - 2.0 * prev + re < -1e-9)
                throw std::invalid_argument("polya_reciprocal: transform not convex");
            prevprev = prev;
            prev = re;
        }
    }

    ReciprocalPair pair;

    // X ~ 1 - phi through the survival / distribution function directly.
    auto phi = [&](double x) { return std::max(0.0, z_spec.transforms.cf(x).real()); };
    double ex_err = 0.0;
    double ex;
    bool ex_inf = false;
    if (s == 0.0) {
        ex = 1.0;
    } else if (s > 0.0) {
        IntegrandProfile p{s - 1.0, TailClass::absolutely_decaying, {}};
        auto r = integrate_halfline([&](double x) { return s * std::pow(x, s - 1.0) * phi(x); },
                                    p, cfg);
        ex_inf = r.status == IntegralStatus::divergent_suspected;
        ex = r.value;
        ex_err = r.error_estimate;
    } else {
        double p_ = -s;
        IntegrandProfile p{s, TailClass::absolutely_decaying, {}};
        auto r = integrate_halfline(
            [&](double x) { return p_ * std::pow(x, s - 1.0) * (1.0 - phi(x)); }, p, cfg);
        ex_inf = r.status == IntegralStatus::divergent_suspected;
        ex = r.value;
        ex_err = r.error_estimate;
    }
    pair.rhs_infinite = ex_inf;
    if (!ex_inf) {
        double c = gamma_fn(s + 1.0) * std::cos(0.5 * kPi * s);
        pair.rhs = ex / c;
        pair.rhs_error = ex_err / std::abs(c);
    }

    // E[|Z|^-s] by direct integration against Z's density.
    if (!z_spec.density)
        throw std::invalid_argument("polya_reciprocal: density of Z required for the left side");
    auto lhs = oracle_moment(z_spec, -s, cfg);
    pair.lhs_infinite = lhs.infinite;
    pair.lhs = lhs.value;
    pair.lhs_error = lhs.error_estimate;
    return pair;
}

LengthBiasedTriple length_biased_relation(const DistributionSpec& spec, double s,
                                          const QuadratureConfig& cfg) {
    if (spec.transforms.support == Support::real_line)
        throw std::invalid_argument("length_biased_relation: requires nonnegative support");
    if (!(s > 0.0 && s < 2.0))
        throw std::domain_error("length_biased_relation: s must lie in (0, 2)");
    double m1 = moment_k(spec, 1);
    if (!(m1 > 0.0) || std::isinf(m1))
        throw std::invalid_argument("length_biased_relation: mean missing or zero");

    LengthBiasedTriple out;
    double c = gamma_fn(s + 1.0) * std::sin(0.5 * kPi * s);

    // Left side: quadrature of the derived density's moment, which is the
    // cosine-residual integral rearranged.
    auto mu = abs_moment_cf(spec, s, 0, false, cfg);
    if (mu.infinite) throw std::domain_error("length_biased_relation: E[X^s] is infinite");
    out.lhs = mu.value / (m1 * c);
    out.lhs_error = mu.error_estimate / (m1 * c);

    double base_err = 0.0;
    bool base_inf = false;
    double base = base_moment(spec, s, base_err, base_inf);
    if (base_inf) throw std::domain_error("length_biased_relation: E[X^s] is infinite");
    out.rhs_closed = base / (m1 * c);

    if (spec.density) {
        // E[Z^{s-1}] with Z length-biased: integral of z^s f(z) / m1.
        auto zr = oracle_moment(spec, s, cfg);
        if (!zr.infinite) {
            out.rhs_biased = zr.value / (m1 * c);
            out.rhs_biased_error = zr.error_estimate / (m1 * c);
            out.rhs_biased_available = true;
        }
    }
    return out;
}

ReciprocalPair equilibrium_reciprocal(const DistributionSpec& spec, int n, double s,
                                      const QuadratureConfig& cfg) {
    if (n < 1) throw std::invalid_argument("equilibrium_reciprocal: order must be >= 1");
    if (!(s > n - 1 && s < n + 1))
        throw std::domain_error("equilibrium_reciprocal: s outside (n-1, n+1)");

    ReciprocalPair pair;
    if (s == static_cast<double>(n)) {
        // continuity point: both sides are exactly 1
        pair.lhs = 1.0;
        pair.rhs = 1.0;
        return pair;
    }

    double mn = moment_k(spec, n);
    if (!(mn > 0.0) || std::isinf(mn))
        throw std::invalid_argument("equilibrium_reciprocal: m_n must be finite and positive");

    double base_err = 0.0;
    double base = base_moment(spec, s, base_err, pair.rhs_infinite);
    if (!pair.rhs_infinite) {
        double c = factorial(n) * (n - s) * kPi /
                   (mn * gamma_fn(s + 1.0) * std::sin((n - s) * kPi));
        pair.rhs = c * base;
        pair.rhs_error = std::abs(c) * base_err;
    }

    auto eq = equilibrium_lst(spec, n);
    double p = n - s;
    IntegralResult ir;
    if (p > 0.0) {
        // E[Y^p] = p * integral of L_(n)(l) l^{p-1}
        IntegrandProfile prof{p - 1.0, TailClass::absolutely_decaying, {}};
        ir = integrate_halfline([&](double l) { return p * std::pow(l, p - 1.0) * eq.lst(l); },
                                prof, cfg);
    } else {
        // E[Y^p], p < 0: |p| * integral of (1 - L_(n)(l)) l^{p-1}
        double q = -p;
        IntegrandProfile prof{p, TailClass::absolutely_decaying, {}};
        ir = integrate_halfline(
            [&](double l) { return q * std::pow(l, p - 1.0) * (1.0 - eq.lst(l)); }, prof, cfg);
    }
    if (ir.status == IntegralStatus::divergent_suspected) {
        pair.lhs_infinite = true;
    } else {
        pair.lhs = ir.value;
        pair.lhs_error = ir.error_estimate;
    }
    return pair;
}

ReciprocalPair exp_mixture_relation(const DistributionSpec& spec, double s,
                                    const QuadratureConfig& cfg) {
    if (spec.transforms.support != Support::positive)
        throw std::invalid_argument("exp_mixture_relation: requires strictly positive support");
    if (!spec.transforms.lst)
        throw std::invalid_argument("exp_mixture_relation: Laplace transform required");

    ReciprocalPair pair;
    if (s == 0.0) {
        pair.lhs = 1.0;
        pair.rhs = 1.0;
        return pair;
    }

    double base_err = 0.0;
    bool base_inf = false;
    double base = base_moment(spec, s, base_err, base_inf);
    if (s >= 1.0 || base_inf) {
        pair.rhs_infinite = true; // the exponential factor has no moment of order -s
    } else {
        double g = gamma_fn(1.0 - s);
        pair.rhs = g * base;
        pair.rhs_error = g * base_err;
    }

    const auto& lst = spec.transforms.lst;
    if (s > 0.0) {
        // E[Z^-s] = s * integral of (1 - L(l)) / l^{s+1}
        Integrand f = [&](double l) { return (1.0 - lst(l)) / std::pow(l, s + 1.0); };
        auto ep = detail::integrate_endpoint(f, 1.0, 1.0, cfg, parallel_enabled());
        if (ep.divergent) {
            pair.lhs_infinite = true;
            return pair;
        }
        IntegrandProfile prof{-s, TailClass::absolutely_decaying, {}};
        auto tail = detail::integrate_tail(f, 1.0, prof, cfg);
        if (tail.status == IntegralStatus::divergent_suspected) {
            pair.lhs_infinite = true;
            return pair;
        }
        pair.lhs = s * (ep.value + tail.value);
        pair.lhs_error = s * (ep.error + tail.error_estimate);
    } else {
        // positive moment of Z: |s| * integral of L(l) l^{|s|-1}
        double p = -s;
        IntegrandProfile prof{p - 1.0, TailClass::absolutely_decaying, {}};
        auto ir = integrate_halfline([&](double l) { return p * std::pow(l, p - 1.0) * lst(l); },
                                     prof, cfg);
        if (ir.status == IntegralStatus::divergent_suspected) {
            pair.lhs_infinite = true;
        } else {
            pair.lhs = ir.value;
            pair.lhs_error = ir.error_estimate;
        }
    }
    return pair;
}

IntegralResult sine_density_mass(const DistributionSpec& spec, const QuadratureConfig& cfg) {
    auto r = sine_integral_identity(spec, cfg);
    r.value *= 2.0 / kPi;
    r.error_estimate *= 2.0 / kPi;
    return r;
}

} // namespace fracmom
