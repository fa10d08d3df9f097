#include "fracmom/corpus.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "fracmom/pchip.hpp"
#include "fracmom/special.hpp"

namespace fracmom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

QuadratureConfig transform_config() {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-13;
    return cfg;
}

// Fourier/Laplace transforms straight from a density evaluator, for
// families without a closed form. The trig weight makes the x-integral an
// alternating half-period series; its accelerated partial sums converge in
// tens of periods where a truncation schedule would need millions. Beyond
// the frequency where the half-period budget cannot span the density's
// decay length, the transform switches to the boundary expansion from
// integration by parts,
//   phi(u) ~ exp(i u x0) * sum_k -f^(k)(x0) / (i u)^{k+1},
// whose remainder is O(u^-5) plus the exponentially small analytic part.
std::complex<double> density_cf_eval(const std::function<double(double)>& density, double t,
                                     double zero_exponent, double support_lower,
                                     double t_asym) {
    if (t == 0.0) return {1.0, 0.0};
    double u = std::abs(t);

    std::complex<double> value;
    if (u >= t_asym) {
        // one-sided derivatives of the density at the support edge
        double h = 1e-3;
        double f0 = density(support_lower);
        double f1v[4];
        for (int i = 0; i < 4; ++i) f1v[i] = density(support_lower + (i + 1) * h);
        double d1 = (-25.0 / 12.0 * f0 + 4.0 * f1v[0] - 3.0 * f1v[1] + 4.0 / 3.0 * f1v[2] -
                     0.25 * f1v[3]) / h;
        double d2 = (2.0 * f0 - 5.0 * f1v[0] + 4.0 * f1v[1] - f1v[2]) / (h * h);
        double d3 = (-f0 + 3.0 * f1v[0] - 3.0 * f1v[1] + f1v[2]) / (h * h * h);
        std::complex<double> it(0.0, u);
        std::complex<double> inv = 1.0 / it;
        std::complex<double> series =
            -inv * (f0 + inv * (d1 + inv * (d2 + inv * d3)));
        std::complex<double> rot(std::cos(u * support_lower), std::sin(u * support_lower));
        value = rot * series;
    } else {
        IntegrandProfile p{zero_exponent, TailClass::oscillatory_conditional, u};
        auto cfg = transform_config();
        auto re =
            integrate_improper([&](double x) { return std::cos(u * x) * density(x); }, p, cfg);
        auto im =
            integrate_improper([&](double x) { return std::sin(u * x) * density(x); }, p, cfg);
        value = {re.value, im.value};
    }
    return t < 0.0 ? std::conj(value) : value;
}

double density_lst_eval(const std::function<double(double)>& density, double l,
                        double zero_exponent) {
    if (l == 0.0) return 1.0;
    IntegrandProfile p{zero_exponent, TailClass::absolutely_decaying, {}};
    auto r = integrate_halfline([&](double x) { return std::exp(-l * x) * density(x); }, p,
                                transform_config());
    return r.value;
}

std::vector<double> tabulate_moments(const std::function<double(int)>& mk, int count) {
    std::vector<double> out;
    out.reserve(count);
    for (int k = 1; k <= count; ++k) out.push_back(mk(k));
    return out;
}

DistributionSpec make_exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
    DistributionSpec d;
    d.name = "exponential";
    d.params = {{"rate", rate}};
    d.transforms.support = Support::positive;
    d.transforms.cf = [rate](double t) {
        double den = rate * rate + t * t;
        return std::complex<double>(rate * rate / den, rate * t / den);
    };
    d.transforms.cf_derivative = [rate](double t) {
        double den = rate * rate + t * t;
        return std::complex<double>(-2.0 * rate * rate * t / (den * den),
                                    rate * (rate * rate - t * t) / (den * den));
    };
    d.transforms.lst = [rate](double l) { return rate / (rate + l); };
    d.density = [rate](double x) { return x < 0.0 ? 0.0 : rate * std::exp(-rate * x); };
    d.cdf = [rate](double x) { return x < 0.0 ? 0.0 : -std::expm1(-rate * x); };
    d.closed_moment = [rate](double s) {
        if (s <= -1.0) return kInf;
        return gamma_fn(s + 1.0) / std::pow(rate, s);
    };
    d.integer_moments = tabulate_moments(
        [rate](int k) { return factorial(k) / std::pow(rate, k); }, 100);
    d.sin_positivity_flag = true; // density decreasing to zero
    d.support_upper = kInf;
    return d;
}

DistributionSpec make_gamma(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("gamma: alpha and beta must be positive");
    DistributionSpec d;
    d.name = "gamma";
    d.params = {{"alpha", alpha}, {"beta", beta}};
    d.transforms.support = Support::positive;
    d.transforms.cf = [alpha, beta](double t) {
        double mod = std::pow(1.0 + beta * beta * t * t, -0.5 * alpha);
        double arg = alpha * std::atan(beta * t);
        return std::complex<double>(mod * std::cos(arg), mod * std::sin(arg));
    };
    d.transforms.cf_derivative = [alpha, beta](double t) {
        double mod = std::pow(1.0 + beta * beta * t * t, -0.5 * (alpha + 1.0));
        double arg = (alpha + 1.0) * std::atan(beta * t);
        return std::complex<double>(-alpha * beta * mod * std::sin(arg),
                                    alpha * beta * mod * std::cos(arg));
    };
    d.transforms.lst = [alpha, beta](double l) { return std::pow(1.0 + beta * l, -alpha); };
    double norm = gamma_fn(alpha) * std::pow(beta, alpha);
    d.density = [alpha, beta, norm](double x) {
        return x <= 0.0 ? 0.0 : std::pow(x, alpha - 1.0) * std::exp(-x / beta) / norm;
    };
    d.closed_moment = [alpha, beta](double s) {
        if (s <= -alpha) return kInf;
        return gamma_fn(s + alpha) * std::pow(beta, s) / gamma_fn(alpha);
    };
    d.integer_moments = tabulate_moments(
        [alpha, beta](int k) {
            double v = 1.0;
            for (int i = 0; i < k; ++i) v *= (alpha + i) * beta;
            return v;
        },
        100);
    d.sin_positivity_flag = alpha <= 2.0;
    d.density_zero_exponent = alpha - 1.0;
    d.support_upper = kInf;
    return d;
}

DistributionSpec make_degenerate(double c) {
    if (c < 0.0) throw std::invalid_argument("degenerate: c must be nonnegative");
    DistributionSpec d;
    d.name = "degenerate";
    d.params = {{"c", c}};
    d.transforms.support = c > 0.0 ? Support::positive : Support::nonnegative;
    d.transforms.cf = [c](double t) {
        return std::complex<double>(std::cos(c * t), std::sin(c * t));
    };
    d.transforms.cf_derivative = [c](double t) {
        return std::complex<double>(-c * std::sin(c * t), c * std::cos(c * t));
    };
    d.transforms.lst = [c](double l) { return std::exp(-c * l); };
    if (c > 0.0) d.transforms.oscillation_scale = c;
    d.cdf = [c](double x) { return x >= c ? 1.0 : 0.0; };
    d.closed_moment = [c](double s) {
        if (s == 0.0) return 1.0;
        if (c == 0.0) return s > 0.0 ? 0.0 : kInf;
        return std::pow(c, s);
    };
    d.integer_moments = tabulate_moments([c](int k) { return std::pow(c, k); }, 100);
    d.support_upper = c;
    return d;
}

DistributionSpec make_uniform(double b) {
    if (!(b > 0.0)) throw std::invalid_argument("uniform: b must be positive");
    DistributionSpec d;
    d.name = "uniform";
    d.params = {{"b", b}};
    d.transforms.support = Support::positive;
    d.transforms.cf = [b](double t) {
        double z = b * t;
        if (std::abs(z) < 1e-5) {
            double z2 = z * z;
            return std::complex<double>(1.0 - z2 / 6.0 + z2 * z2 / 120.0,
                                        z / 2.0 - z * z2 / 24.0);
        }
        double sh = std::sin(0.5 * z);
        return std::complex<double>(std::sin(z) / z, 2.0 * sh * sh / z);
    };
    d.transforms.cf_derivative = [b](double t) {
        double z = b * t;
        if (std::abs(z) < 1e-4) {
            // from the moment series: m1 = b/2, m2 = b^2/3, m3 = b^3/4, m4 = b^4/5
            double re = -b * z / 3.0 + b * z * z * z / 30.0;
            double im = b / 2.0 - b * z * z / 8.0;
            return std::complex<double>(re, im);
        }
        double c = std::cos(z), s = std::sin(z);
        return std::complex<double>(b * (z * c - s) / (z * z),
                                    b * (c + z * s - 1.0) / (z * z));
    };
    d.transforms.lst = [b](double l) {
        double z = b * l;
        if (std::abs(z) < 1e-5) return 1.0 - z / 2.0 + z * z / 6.0;
        return -std::expm1(-z) / z;
    };
    d.transforms.oscillation_scale = b;
    d.density = [b](double x) { return (x < 0.0 || x > b) ? 0.0 : 1.0 / b; };
    d.cdf = [b](double x) { return x <= 0.0 ? 0.0 : (x >= b ? 1.0 : x / b); };
    d.closed_moment = [b](double s) {
        if (s <= -1.0) return kInf;
        return std::pow(b, s) / (s + 1.0);
    };
    d.integer_moments = tabulate_moments(
        [b](int k) { return std::pow(b, k) / (k + 1); }, 100);
    d.sin_positivity_flag = true;
    d.support_upper = b;
    return d;
}

DistributionSpec make_normal() {
    DistributionSpec d;
    d.name = "normal";
    d.transforms.support = Support::real_line;
    d.transforms.cf = [](double t) {
        return std::complex<double>(std::exp(-0.5 * t * t), 0.0);
    };
    d.transforms.cf_derivative = [](double t) {
        return std::complex<double>(-t * std::exp(-0.5 * t * t), 0.0);
    };
    double norm = std::sqrt(2.0 * kPi);
    d.density = [norm](double x) { return std::exp(-0.5 * x * x) / norm; };
    d.cdf = [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); };
    d.closed_moment = [](double s) {
        if (s <= -1.0) return kInf;
        return std::pow(2.0, 0.5 * s) * gamma_fn(0.5 * (s + 1.0)) / std::sqrt(kPi);
    };
    d.integer_moments = tabulate_moments(
        [](int k) { return (k % 2) ? 0.0 : double_factorial_odd(k / 2); }, 100);
    d.support_upper = kInf;
    return d;
}

DistributionSpec make_half_cauchy() {
    DistributionSpec d;
    d.name = "half-cauchy";
    d.transforms.support = Support::positive;
    d.density = [](double x) { return x < 0.0 ? 0.0 : (2.0 / kPi) / (1.0 + x * x); };
    d.cdf = [](double x) { return x <= 0.0 ? 0.0 : (2.0 / kPi) * std::atan(x); };
    auto density = d.density;
    d.transforms.cf = [density](double t) { return density_cf_eval(density, t, 0.0, 0.0, 30.0); };
    d.transforms.lst = [density](double l) { return density_lst_eval(density, l, 0.0); };
    d.closed_moment = [](double s) {
        if (std::abs(s) >= 1.0) return kInf;
        return 1.0 / std::cos(0.5 * kPi * s);
    };
    d.integer_moments.assign(8, kInf);
    d.sin_positivity_flag = true;
    d.support_upper = kInf;
    return d;
}

DistributionSpec make_pareto(double alpha, double xm) {
    if (!(alpha > 0.0) || !(xm > 0.0))
        throw std::invalid_argument("pareto: alpha and xm must be positive");
    DistributionSpec d;
    d.name = "pareto";
    d.params = {{"alpha", alpha}, {"xm", xm}};
    d.transforms.support = Support::positive;
    d.density = [alpha, xm](double x) {
        return x < xm ? 0.0 : alpha * std::pow(xm, alpha) * std::pow(x, -alpha - 1.0);
    };
    d.cdf = [alpha, xm](double x) {
        return x <= xm ? 0.0 : 1.0 - std::pow(xm / x, alpha);
    };
    auto density = d.density;
    d.transforms.cf = [density, xm](double t) {
        return density_cf_eval(density, t, 0.0, xm, 200.0 * xm);
    };
    d.transforms.lst = [density](double l) { return density_lst_eval(density, l, 0.0); };
    d.transforms.oscillation_scale = xm; // support edge rings at frequency xm
    d.support_lower = xm;
    d.closed_moment = [alpha, xm](double s) {
        if (s >= alpha) return kInf;
        return alpha * std::pow(xm, s) / (alpha - s);
    };
    d.integer_moments = tabulate_moments(
        [alpha, xm](int k) {
            return k < alpha ? alpha * std::pow(xm, k) / (alpha - k) : kInf;
        },
        8);
    d.sin_positivity_flag = true;
    d.support_upper = kInf;
    return d;
}

DistributionSpec make_fejer() {
    DistributionSpec d;
    d.name = "fejer";
    d.transforms.support = Support::real_line;
    d.transforms.cf = [](double t) {
        return std::complex<double>(std::max(0.0, 1.0 - std::abs(t)), 0.0);
    };
    d.density = [](double z) {
        // (1 - cos z) / (pi z^2), continuous value 1/(2 pi) at z = 0
        double az = std::abs(z);
        if (az < 1e-150) return 1.0 / (2.0 * kPi);
        double s = std::sin(0.5 * az);
        return 2.0 * s * s / (kPi * az * az);
    };
    d.closed_moment = [](double s) {
        if (std::abs(s) >= 1.0) return kInf;
        return 1.0 / (gamma_fn(2.0 - s) * std::cos(0.5 * kPi * s));
    };
    d.integer_moments.assign(8, kInf);
    d.density_oscillation = 1.0;
    d.support_upper = kInf;
    return d;
}

} // namespace

const char* method_name(MomentMethod m) {
    switch (m) {
        case MomentMethod::thm1prime_eq9: return "thm1prime_eq9";
        case MomentMethod::thm1prime_eq10: return "thm1prime_eq10";
        case MomentMethod::thm2: return "thm2";
        case MomentMethod::thm5_eq19: return "thm5_eq19";
        case MomentMethod::thm5_eq20: return "thm5_eq20";
        case MomentMethod::eq28: return "eq28";
        case MomentMethod::ramanujan: return "ramanujan";
        case MomentMethod::eq5: return "eq5";
        case MomentMethod::oracle: return "oracle";
    }
    return "unknown";
}

const char* method_formula_ref(MomentMethod m) {
    switch (m) {
        case MomentMethod::thm1prime_eq9: return "Thm1'/Eq9";
        case MomentMethod::thm1prime_eq10: return "Thm1'/Eq10";
        case MomentMethod::thm2: return "Thm2/Eq12";
        case MomentMethod::thm5_eq19: return "Thm5/Eq19";
        case MomentMethod::thm5_eq20: return "Thm5/Eq20";
        case MomentMethod::eq28: return "Rem5/Eq28";
        case MomentMethod::ramanujan: return "Rem5/RMT";
        case MomentMethod::eq5: return "Eq5";
        case MomentMethod::oracle: return "oracle";
    }
    return "unknown";
}

double moment_k(const DistributionSpec& spec, int k) {
    if (k < 0) throw std::invalid_argument("moment_k: negative order");
    if (k == 0) return 1.0;
    if (k <= static_cast<int>(spec.integer_moments.size())) return spec.integer_moments[k - 1];
    if (spec.density && spec.transforms.support != Support::real_line) {
        auto r = oracle_moment(spec, static_cast<double>(k));
        return r.infinite ? kInf : r.value;
    }
    throw std::runtime_error("moment_k: integer moment m_" + std::to_string(k) +
                             " unavailable for " + spec.name);
}

DistributionSpec get_distribution(const std::string& name,
                                  const std::map<std::string, double>& params) {
    if (name == "exponential") return make_exponential(get_param(params, "rate", 1.0));
    if (name == "gamma")
        return make_gamma(get_param(params, "alpha", 1.0), get_param(params, "beta", 1.0));
    if (name == "degenerate") return make_degenerate(get_param(params, "c", 1.0));
    if (name == "uniform") return make_uniform(get_param(params, "b", 1.0));
    if (name == "normal") return make_normal();
    if (name == "half-cauchy") return make_half_cauchy();
    if (name == "pareto")
        return make_pareto(get_param(params, "alpha", 1.5), get_param(params, "xm", 1.0));
    if (name == "fejer") return make_fejer();
    throw std::invalid_argument("unknown distribution: " + name);
}

DistributionSpec make_scaled(const DistributionSpec& spec, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("make_scaled: scale must be positive");
    DistributionSpec d = spec;
    d.name = spec.name + "-scaled";
    d.params["scale"] = c;
    if (spec.transforms.cf)
        d.transforms.cf = [cf = spec.transforms.cf, c](double t) { return cf(c * t); };
    if (spec.transforms.cf_derivative)
        d.transforms.cf_derivative = [dcf = spec.transforms.cf_derivative, c](double t) {
            return c * dcf(c * t);
        };
    if (spec.transforms.lst)
        d.transforms.lst = [lst = spec.transforms.lst, c](double l) { return lst(c * l); };
    if (spec.transforms.oscillation_scale)
        d.transforms.oscillation_scale = *spec.transforms.oscillation_scale * c;
    if (spec.density)
        d.density = [f = spec.density, c](double x) { return f(x / c) / c; };
    if (spec.cdf) d.cdf = [F = spec.cdf, c](double x) { return F(x / c); };
    if (spec.closed_moment)
        d.closed_moment = [m = spec.closed_moment, c](double s) {
            double v = m(s);
            return std::isinf(v) ? v : std::pow(c, s) * v;
        };
    for (std::size_t k = 0; k < d.integer_moments.size(); ++k)
        if (!std::isinf(d.integer_moments[k]))
            d.integer_moments[k] *= std::pow(c, static_cast<double>(k + 1));
    d.support_lower = spec.support_lower * c;
    d.support_upper = spec.support_upper * c;
    return d;
}

CsvError::CsvError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

TabulatedDensity load_density_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open density file: " + path);
    TabulatedDensity table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // trim
        auto b = line.find_first_not_of(" \t\r");
        auto e = line.find_last_not_of(" \t\r");
        if (b == std::string::npos) continue;
        line = line.substr(b, e - b + 1);
        if (lineno == 1) {
            if (line != "x,f") throw CsvError(lineno, "expected header 'x,f', got '" + line + "'");
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) throw CsvError(lineno, "expected two comma-separated fields");
        std::size_t used = 0;
        double x, f;
        try {
            x = std::stod(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw CsvError(lineno, "cannot parse x value '" + line.substr(0, comma) + "'");
        }
        std::string fs = line.substr(comma + 1);
        try {
            f = std::stod(fs, &used);
            if (used != fs.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw CsvError(lineno, "cannot parse f value '" + fs + "'");
        }
        table.xs.push_back(x);
        table.fs.push_back(f);
    }
    return table;
}

DistributionSpec ingest_density_table(const TabulatedDensity& table) {
    if (table.xs.size() != table.fs.size())
        throw std::invalid_argument("density table: x/f size mismatch");
    if (table.xs.size() < 2) throw std::invalid_argument("density table: too few rows");
    if (table.xs.front() < 0.0)
        throw std::invalid_argument("density table: support must be nonnegative");
    for (std::size_t i = 0; i < table.xs.size(); ++i) {
        if (i > 0 && !(table.xs[i] > table.xs[i - 1]))
            throw std::invalid_argument("density table: abscissas not strictly increasing at row " +
                                        std::to_string(i + 1));
        if (table.fs[i] < 0.0)
            throw std::invalid_argument("density table: negative ordinate at row " +
                                        std::to_string(i + 1));
    }
    double trap = 0.0;
    for (std::size_t i = 0; i + 1 < table.xs.size(); ++i)
        trap += 0.5 * (table.fs[i] + table.fs[i + 1]) * (table.xs[i + 1] - table.xs[i]);
    if (std::abs(trap - 1.0) > table.normalization_tolerance)
        throw std::invalid_argument("density table: trapezoid mass " + std::to_string(trap) +
                                    " outside the normalization tolerance");

    auto interp = std::make_shared<PchipInterpolant>(table.xs, table.fs);
    interp->scale(1.0 / trap);

    DistributionSpec d;
    d.name = "tabulated";
    d.transforms.support = Support::positive;
    d.density = [interp](double x) { return (*interp)(x); };
    d.cdf = [interp](double x) { return interp->integral_to(x); };
    d.transforms.cf = [interp](double t) { return interp->fourier(t); };
    d.transforms.lst = [interp](double l) { return interp->laplace(l); };
    if (interp->back_ordinate() > 1e-6 * interp->max_ordinate())
        d.transforms.oscillation_scale = interp->back();
    d.support_upper = interp->back();
    return d;
}

MomentResult oracle_moment(const DistributionSpec& spec, double s, const QuadratureConfig& cfg) {
    MomentResult r;
    r.s = s;
    r.method = MomentMethod::oracle;
    if (s == 0.0) {
        r.value = 1.0;
        return r;
    }
    if (!spec.density) {
        if (spec.closed_moment) {
            double v = spec.closed_moment(s);
            r.infinite = std::isinf(v);
            r.value = r.infinite ? 0.0 : v;
            return r;
        }
        throw std::invalid_argument("oracle_moment: no density or distribution function for " +
                                    spec.name);
    }

    double alpha = s + spec.density_zero_exponent;
    if (alpha <= -1.0) {
        if (spec.support_lower <= 0.0) {
            r.infinite = true; // non-integrable at the origin
            return r;
        }
        alpha = 0.0; // no mass near the origin; the hint is moot
    }
    const bool realline = spec.transforms.support == Support::real_line;
    auto f = spec.density;
    Integrand g;
    if (realline)
        g = [f, s](double x) { return std::pow(x, s) * (f(x) + f(-x)); };
    else
        g = [f, s](double x) { return std::pow(x, s) * f(x); };

    IntegrandProfile profile{alpha, TailClass::absolutely_decaying, spec.density_oscillation};
    auto ir = integrate_halfline(g, profile, cfg);
    r.panels_used = ir.panels_used;
    r.function_evals = ir.function_evals;
    if (ir.status == IntegralStatus::divergent_suspected) {
        r.infinite = true;
        return r;
    }
    r.value = ir.value;
    r.error_estimate = ir.error_estimate;
    return r;
}

} // namespace fracmom
