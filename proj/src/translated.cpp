#include "fracmom/translated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "fracmom/engine.hpp"
#include "fracmom/sequences.hpp"
#include "fracmom/special.hpp"

namespace fracmom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

QuadratureConfig tight_config(const QuadratureConfig& cfg) {
    QuadratureConfig t = cfg;
    t.rel_tol = std::min(cfg.rel_tol, 1e-12);
    t.abs_tol = std::min(cfg.abs_tol, 1e-14);
    return t;
}

void validate_sequence(const MuntzSequence& seq) {
    std::set<double> seen;
    for (double v : seq.values) {
        if (!(v > 0.0))
            throw std::invalid_argument("shift sequence entries must be positive");
        if (!seen.insert(v).second)
            throw std::invalid_argument("shift sequence entries must be distinct");
    }
}

// Shifted-transform catalog entry for X + a.
DistributionSpec shift_spec(const DistributionSpec& spec, double a) {
    DistributionSpec d;
    d.name = spec.name + "-shifted";
    d.transforms.support = Support::positive;
    if (spec.transforms.lst)
        d.transforms.lst = [lst = spec.transforms.lst, a](double l) {
            return std::exp(-a * l) * lst(l);
        };
    int count = static_cast<int>(std::min<std::size_t>(spec.integer_moments.size(), 60));
    for (int k = 1; k <= count; ++k) {
        double mk = 0.0;
        bool inf = false;
        for (int i = 0; i <= k; ++i) {
            double mi = moment_k(spec, i);
            if (std::isinf(mi)) {
                inf = true;
                break;
            }
            mk += gen_binomial(k, i) * std::pow(a, k - i) * mi;
        }
        d.integer_moments.push_back(inf ? kInf : mk);
    }
    d.support_upper = spec.support_upper + a;
    return d;
}

} // namespace

MuntzSequence make_sequence(SequenceKind kind, int K, double a0) {
    if (K < 1) throw std::invalid_argument("make_sequence: prefix length must be >= 1");
    MuntzSequence seq;
    switch (kind) {
        case SequenceKind::primes: {
            seq.condition = MuntzCondition::divergent_reciprocal_sum;
            for (auto p : first_primes(K)) seq.values.push_back(static_cast<double>(p));
            break;
        }
        case SequenceKind::reciprocal_primes: {
            seq.condition = MuntzCondition::vanishing_divergent_sum;
            for (auto p : first_primes(K)) seq.values.push_back(1.0 / static_cast<double>(p));
            break;
        }
        case SequenceKind::harmonic_to_limit: {
            if (!(a0 > 0.0))
                throw std::invalid_argument("make_sequence: the limit a0 must be positive");
            seq.condition = MuntzCondition::positive_limit;
            for (int k = 1; k <= K; ++k) seq.values.push_back(a0 + 1.0 / k);
            break;
        }
    }
    return seq;
}

MuntzSequence make_custom_sequence(std::vector<double> values, MuntzCondition condition) {
    MuntzSequence seq{condition, std::move(values)};
    if (seq.values.empty()) throw std::invalid_argument("custom sequence must be nonempty");
    validate_sequence(seq);
    return seq;
}

namespace detail {

double translated_ratio(const DistributionSpec& spec, double s, double a,
                        const QuadratureConfig& cfg) {
    if (!(a > 0.0)) throw std::invalid_argument("translated_ratio: a must be positive");
    if (spec.name == "degenerate") {
        double c = spec.params.at("c");
        return std::pow(1.0 + c / a, s);
    }
    if (!spec.density)
        throw std::invalid_argument("translated_ratio: density required");
    auto f = spec.density;
    Integrand g = [f, s, a](double x) { return std::pow(1.0 + x / a, s) * f(x); };
    IntegrandProfile p{spec.density_zero_exponent, TailClass::absolutely_decaying,
                       spec.density_oscillation};
    auto r = integrate_halfline(g, p, tight_config(cfg));
    if (r.status == IntegralStatus::divergent_suspected)
        throw std::domain_error("translated_ratio: moment appears divergent");
    return r.value;
}

} // namespace detail

double translated_moment(const DistributionSpec& spec, double s, double a,
                         const QuadratureConfig& cfg) {
    if (a < 0.0) throw std::invalid_argument("translated_moment: a must be nonnegative");
    if (spec.transforms.support == Support::real_line)
        throw std::invalid_argument("translated_moment: requires nonnegative support");

    if (spec.name == "degenerate") {
        double c = spec.params.at("c");
        return std::pow(c + a, s);
    }
    if (spec.density) {
        if (a >= 1.0) return std::pow(a, s) * detail::translated_ratio(spec, s, a, cfg);
        auto f = spec.density;
        Integrand g = [f, s, a](double x) { return std::pow(x + a, s) * f(x); };
        double hint = (a == 0.0) ? s + spec.density_zero_exponent : spec.density_zero_exponent;
        if (hint <= -1.0) {
            if (spec.support_lower <= 0.0)
                throw std::domain_error("translated_moment: non-integrable at the origin");
            hint = 0.0;
        }
        IntegrandProfile p{hint, TailClass::absolutely_decaying, spec.density_oscillation};
        auto r = integrate_halfline(g, p, tight_config(cfg));
        if (r.status == IntegralStatus::divergent_suspected)
            throw std::domain_error("translated_moment: moment appears divergent");
        return r.value;
    }
    return translated_moment_lst_route(spec, s, a, cfg);
}

double translated_moment_lst_route(const DistributionSpec& spec, double s, double a,
                                   const QuadratureConfig& cfg) {
    if (!spec.transforms.lst)
        throw std::invalid_argument("translated_moment: no Laplace transform for " + spec.name);
    if (a == 0.0 && spec.density == nullptr && spec.name != "degenerate") {
        auto r = moment_lst(spec, s, cfg);
        if (r.infinite) throw std::domain_error("translated_moment: moment appears divergent");
        return r.value;
    }
    auto shifted = shift_spec(spec, a);
    auto r = moment_lst(shifted, s, tight_config(cfg));
    if (r.infinite) throw std::domain_error("translated_moment: moment appears divergent");
    return r.value;
}

DiscriminationReport discriminate(const DistributionSpec& spec_a, const DistributionSpec& spec_b,
                                  double s, const MuntzSequence& seq, double tol,
                                  const QuadratureConfig& cfg) {
    if (spec_a.transforms.support == Support::real_line ||
        spec_b.transforms.support == Support::real_line)
        throw std::invalid_argument("discriminate: requires nonnegative support");
    validate_sequence(seq);

    double ma = translated_moment(spec_a, s, 0.0, cfg);
    double mb = translated_moment(spec_b, s, 0.0, cfg);
    if (std::abs(ma - mb) > tol)
        throw std::invalid_argument(
            "discriminate: base moments differ beyond the tolerance; the matched-base "
            "hypothesis fails");

    const bool doubled = s > 1.0;
    const int K = static_cast<int>(seq.values.size());
    std::vector<double> disc(K, 0.0);
    std::vector<signed char> failed(K, 0);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < K; ++k) {
        try {
            double a = seq.values[k];
            double d = std::abs(translated_moment(spec_a, s, a, cfg) -
                                translated_moment(spec_b, s, a, cfg));
            if (doubled) {
                double d2 = std::abs(translated_moment(spec_a, s, 2.0 * a, cfg) -
                                     translated_moment(spec_b, s, 2.0 * a, cfg));
                d = std::max(d, d2);
            }
            disc[k] = d;
        } catch (const std::exception&) {
            failed[k] = 1;
        }
    }
    for (int k = 0; k < K; ++k)
        if (failed[k])
            throw std::domain_error("discriminate: translated moment failed at index " +
                                    std::to_string(k + 1));

    DiscriminationReport rep;
    rep.discrepancies = disc;
    for (int k = 0; k < K; ++k) {
        rep.max_discrepancy = std::max(rep.max_discrepancy, disc[k]);
        if (!rep.first_exceeding_index && disc[k] > tol) rep.first_exceeding_index = k + 1;
    }
    return rep;
}

std::vector<double> default_extraction_schedule() {
    std::vector<double> a;
    for (double v = 32.0; v <= 4096.0; v *= 2.0) a.push_back(v);
    return a;
}

ExtractionResult extract_integer_moments(const DistributionSpec& spec, double s, int n,
                                         const std::vector<double>& a_schedule,
                                         const QuadratureConfig& cfg) {
    if (n < 1) throw std::invalid_argument("extract_integer_moments: n must be >= 1");
    if (!(s > n && s < n + 1))
        throw std::domain_error("extract_integer_moments: s outside (n, n+1)");
    if (a_schedule.size() < 3)
        throw std::invalid_argument("extract_integer_moments: schedule too short");

    const int A = static_cast<int>(a_schedule.size());
    std::vector<double> ratio_a(A), ratio_2a(A);
    std::vector<signed char> failed(A, 0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < A; ++i) {
        try {
            ratio_a[i] = detail::translated_ratio(spec, s, a_schedule[i], cfg);
            ratio_2a[i] = detail::translated_ratio(spec, s, 2.0 * a_schedule[i], cfg);
        } catch (const std::exception&) {
            failed[i] = 1;
        }
    }
    for (int i = 0; i < A; ++i)
        if (failed[i])
            throw std::domain_error("extract_integer_moments: translated moment failed at a = " +
                                    std::to_string(a_schedule[i]));

    ExtractionResult out;
    std::vector<double> mhat{1.0}; // m_0
    for (int l = 0; l < n; ++l) {
        std::vector<double> xs(A), ys(A);
        for (int i = 0; i < A; ++i) {
            double a = a_schedule[i];
            double D = std::pow(a, l + 1) *
                       (2.0 * ratio_a[i] - std::pow(2.0, l + 1) * ratio_2a[i]);
            // subtract the known (already extracted) divergent head; the
            // j = l term carries the factor (2 - 2) = 0
            double head = 0.0;
            for (int j = 0; j < l; ++j)
                head += gen_binomial(s, j) * std::pow(a, l + 1 - j) *
                        (2.0 - std::pow(2.0, l + 1 - j)) * mhat[j];
            xs[i] = 1.0 / a;
            ys[i] = D - head;
        }
        auto full = neville_to_zero(xs, ys);
        auto prefix = neville_to_zero(std::vector<double>(xs.begin(), xs.end() - 1),
                                      std::vector<double>(ys.begin(), ys.end() - 1));
        double coeff = gen_binomial(s, l + 1);
        double m_next = full.value / coeff;
        double err = full.error_estimate / std::abs(coeff);
        if (!(full.error_estimate <= prefix.error_estimate * 1.05 ||
              full.error_estimate < 1e-10 * std::abs(full.value)))
            out.converged = false; // extrapolation not contracting
        mhat.push_back(m_next);
        out.moments.push_back(m_next);
        out.error_estimates.push_back(err);
    }
    return out;
}

} // namespace fracmom
