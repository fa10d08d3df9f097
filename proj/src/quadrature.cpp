#include "fracmom/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fracmom/sequences.hpp"
#include "fracmom/summation.hpp"

namespace fracmom {

NonFiniteError::NonFiniteError(double abscissa)
    : std::runtime_error("integrand returned a non-finite value at t = " +
                         std::to_string(abscissa)),
      abscissa_(abscissa) {}

namespace {
std::atomic<bool> g_parallel{true};
constexpr double kTiny = 1e-300;
} // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel_enabled(bool enabled) { g_parallel.store(enabled, std::memory_order_relaxed); }

namespace detail {

namespace {

// 15-point Kronrod rule with the embedded 7-point Gauss rule. Abscissae are
// sorted descending; even indices are Kronrod-only points.
constexpr double kXgk[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
constexpr double kWg[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

struct PanelEval {
    double val = 0.0;
    double err = 0.0;
};

PanelEval gk15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fc = f(center);
    if (!std::isfinite(fc)) throw NonFiniteError(center);

    double f1v[7], f2v[7];
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    for (int i = 0; i < 7; ++i) {
        double dx = half * kXgk[i];
        double x1 = center - dx;
        double x2 = center + dx;
        double f1 = f(x1);
        if (!std::isfinite(f1)) throw NonFiniteError(x1);
        double f2 = f(x2);
        if (!std::isfinite(f2)) throw NonFiniteError(x2);
        f1v[i] = f1;
        f2v[i] = f2;
        double fsum = f1 + f2;
        resk += kWgk[i] * fsum;
        resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }

    double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(f1v[i] - reskh) + std::abs(f2v[i] - reskh));

    PanelEval out;
    out.val = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > kTiny / eps50) err = std::max(eps50 * resabs, err);
    out.err = err;
    return out;
}

struct Leaf {
    double a;
    double b;
    double val;
    double err;
};

// Evaluate a batch of panels, optionally with OpenMP. Exceptions raised on
// worker threads are re-thrown in deterministic (index) order.
std::vector<PanelEval> eval_batch(const Integrand& f,
                                  const std::vector<std::pair<double, double>>& batch,
                                  bool parallel) {
    std::vector<PanelEval> out(batch.size());
    if (parallel && batch.size() > 1) {
        std::vector<signed char> bad(batch.size(), 0);
        std::vector<double> bad_x(batch.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(batch.size()); ++i) {
            try {
                out[i] = gk15(f, batch[i].first, batch[i].second);
            } catch (const NonFiniteError& e) {
                bad[i] = 1;
                bad_x[i] = e.abscissa();
            }
        }
        for (std::size_t i = 0; i < batch.size(); ++i)
            if (bad[i]) throw NonFiniteError(bad_x[i]);
    } else {
        for (std::size_t i = 0; i < batch.size(); ++i)
            out[i] = gk15(f, batch[i].first, batch[i].second);
    }
    return out;
}

double sum_values(const std::vector<Leaf>& leaves) {
    NeumaierSum s;
    for (const Leaf& l : leaves) s.add(l.val);
    return s.value();
}

double sum_errors(const std::vector<Leaf>& leaves) {
    NeumaierSum s;
    for (const Leaf& l : leaves) s.add(l.err);
    return s.value();
}

} // namespace

IntervalResult integrate_interval(const Integrand& f, double a, double b, double abs_tol,
                                  int max_panels, int preseed, bool parallel) {
    IntervalResult res;
    if (!(b > a)) return res;
    preseed = std::clamp(preseed, 1, std::max(1, max_panels));

    std::vector<std::pair<double, double>> batch;
    batch.reserve(preseed);
    double width = b - a;
    for (int i = 0; i < preseed; ++i)
        batch.emplace_back(a + width * i / preseed, a + width * (i + 1) / preseed);

    std::vector<PanelEval> evals = eval_batch(f, batch, parallel);
    res.evals += 15 * static_cast<long>(batch.size());
    res.panels += static_cast<int>(batch.size());

    std::vector<Leaf> leaves;
    leaves.reserve(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i)
        leaves.push_back({batch[i].first, batch[i].second, evals[i].val, evals[i].err});

    for (int round = 0; round < 64; ++round) {
        double total_err = sum_errors(leaves);
        if (total_err <= abs_tol) break;
        if (static_cast<int>(leaves.size()) >= max_panels) {
            res.tol_met = false;
            break;
        }

        // Split every leaf above its equidistributed error share; if none
        // qualifies, split the worst one so the round always makes progress.
        std::vector<std::size_t> to_split;
        double total_width = b - a;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            const Leaf& l = leaves[i];
            double w = l.b - l.a;
            if (w <= std::abs(l.a) * 4e-16) continue; // cannot subdivide further
            if (l.err > abs_tol * (w / total_width)) to_split.push_back(i);
        }
        if (to_split.empty()) {
            std::size_t worst = leaves.size();
            double worst_err = 0.0;
            for (std::size_t i = 0; i < leaves.size(); ++i) {
                double w = leaves[i].b - leaves[i].a;
                if (w <= std::abs(leaves[i].a) * 4e-16) continue;
                if (leaves[i].err > worst_err) {
                    worst_err = leaves[i].err;
                    worst = i;
                }
            }
            if (worst == leaves.size()) {
                res.tol_met = total_err <= abs_tol;
                break;
            }
            to_split.push_back(worst);
        }

        int room = max_panels - static_cast<int>(leaves.size());
        if (room <= 0) {
            res.tol_met = false;
            break;
        }
        if (static_cast<int>(to_split.size()) > room) {
            // Keep the largest errors; ties resolved by index.
            std::stable_sort(to_split.begin(), to_split.end(), [&](std::size_t x, std::size_t y) {
                return leaves[x].err > leaves[y].err;
            });
            to_split.resize(room);
            std::sort(to_split.begin(), to_split.end());
        }

        batch.clear();
        for (std::size_t idx : to_split) {
            double mid = 0.5 * (leaves[idx].a + leaves[idx].b);
            batch.emplace_back(leaves[idx].a, mid);
            batch.emplace_back(mid, leaves[idx].b);
        }
        evals = eval_batch(f, batch, parallel);
        res.evals += 15 * static_cast<long>(batch.size());
        res.panels += static_cast<int>(batch.size());

        std::vector<Leaf> next;
        next.reserve(leaves.size() + to_split.size());
        std::size_t split_pos = 0;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            if (split_pos < to_split.size() && to_split[split_pos] == i) {
                std::size_t bi = 2 * split_pos;
                next.push_back({batch[bi].first, batch[bi].second, evals[bi].val, evals[bi].err});
                next.push_back(
                    {batch[bi + 1].first, batch[bi + 1].second, evals[bi + 1].val, evals[bi + 1].err});
                ++split_pos;
            } else {
                next.push_back(leaves[i]);
            }
        }
        leaves.swap(next);
    }

    res.value = sum_values(leaves);
    res.error = sum_errors(leaves);
    if (res.error > abs_tol) res.tol_met = false;
    return res;
}

// Graded dyadic descent from `top` toward 0. Contributions of successive
// panels of a t^alpha integrand form a geometric sequence; once the ratio is
// established the remaining mass is closed with the geometric model and a
// share of the closure is folded into the error estimate. Same-sign
// contributions refusing to decay raise the endpoint divergence flag.
EndpointResult integrate_endpoint(const Integrand& f, double top, double outer_scale,
                                  const QuadratureConfig& cfg, bool parallel) {
    EndpointResult out;
    NeumaierSum sum;
    NeumaierSum errs;
    double hi = top;
    double prev_c = std::numeric_limits<double>::quiet_NaN();
    double prev_ratio = std::numeric_limits<double>::quiet_NaN();
    double prev_drift = std::numeric_limits<double>::infinity();
    int slow = 0;
    int settled = 0;
    for (int k = 0; k < 220 && hi > kTiny; ++k) {
        double lo = 0.5 * hi;
        double eps_goal =
            std::max(cfg.abs_tol, cfg.rel_tol * (outer_scale + std::abs(sum.value())));
        auto iv = integrate_interval(f, lo, hi, 0.05 * eps_goal, 64, 1, parallel);
        out.panels += iv.panels;
        out.evals += iv.evals;
        double c = iv.value;
        sum.add(c);
        errs.add(iv.error);

        if (!std::isnan(prev_c)) {
            double ratio = std::abs(c) / std::max(std::abs(prev_c), kTiny);
            bool same_sign = c * prev_c > 0.0;
            if (same_sign && ratio >= 0.97 && std::abs(c) > eps_goal)
                ++slow;
            else
                slow = 0;
            if (slow >= 8) {
                out.divergent = true;
                out.value = sum.value();
                out.error = errs.value();
                return out;
            }

            // Contributions already negligible on two levels: whatever is
            // left below is bounded by their geometric continuation.
            if (std::abs(c) <= 0.02 * eps_goal && std::abs(prev_c) <= 0.02 * eps_goal) {
                errs.add(2.0 * (std::abs(c) + std::abs(prev_c)));
                break;
            }

            // Geometric closure: the remaining mass below `lo` is
            // rem = |c| ratio/(1-ratio) under the power-law model; the
            // model's own error is measured by the drift of the level
            // ratio (which keeps shrinking for smooth integrands), so
            // settling is drift-driven rather than forcing the whole
            // remainder under the tolerance.
            if (ratio < 0.95 && std::abs(c) > 0.0) {
                double rem = std::abs(c) * ratio / (1.0 - ratio);
                double drift = std::isnan(prev_ratio)
                                   ? std::numeric_limits<double>::infinity()
                                   : std::abs(ratio - prev_ratio);
                double worst_drift = std::max(drift, prev_drift);
                double model_err =
                    rem * std::min(1.0, worst_drift / (1.0 - ratio)) + 1e-6 * rem;
                if (model_err <= 0.25 * eps_goal) {
                    ++settled;
                    if (settled >= 2) {
                        double closure = (c >= 0.0 ? 1.0 : -1.0) * rem;
                        sum.add(closure);
                        errs.add(model_err + 0.02 * eps_goal);
                        break;
                    }
                } else {
                    settled = 0;
                }
                prev_drift = drift;
            } else {
                settled = 0;
                prev_drift = std::numeric_limits<double>::infinity();
            }
            prev_ratio = ratio;
        }
        prev_c = c;
        hi = lo;
        if (k == 219) errs.add(std::abs(c)); // descent cap reached
    }
    out.value = sum.value();
    out.error = errs.value();
    return out;
}

IntegralResult integrate_tail(const Integrand& f, double start, const IntegrandProfile& profile,
                              const QuadratureConfig& cfg) {
    IntegralResult res;
    const double omega = profile.oscillation_scale.value_or(0.0);
    const bool osc = omega > 0.0;
    const bool parallel = parallel_enabled();

    // Anchor the doubling schedule; with an oscillation the anchor is a
    // whole number of periods so truncation remainders vary smoothly along
    // the schedule.
    double T0 = std::ldexp(1.0, cfg.schedule_min_exponent);
    double anchor;
    if (osc) {
        double period = 2.0 * std::numbers::pi / omega;
        anchor = period * std::max(1.0, std::round(T0 / period));
    } else {
        anchor = T0;
    }
    while (anchor <= start) anchor *= 2.0;
    const double T_cap = std::ldexp(1.0, cfg.schedule_max_exponent);

    NeumaierSum partial;
    NeumaierSum errs;
    WynnEpsilon eps;
    double prev_T = start;
    double prev_delta = std::numeric_limits<double>::quiet_NaN();
    double prev_partial = std::numeric_limits<double>::quiet_NaN();
    int plain_ok = 0;
    int accel_ok = 0;
    int slow = 0;
    int growth = 0;
    double plain_rem = std::numeric_limits<double>::infinity();

    double T = anchor;
    while (T <= T_cap) {
        double width = T - prev_T;
        int preseed = 1;
        if (osc) {
            double needed = width * omega / std::numbers::pi;
            if (needed > cfg.max_panels) break; // cost cap; acceleration takes over
            preseed = std::max(1, static_cast<int>(std::ceil(needed)));
        }
        double scale = std::abs(partial.value());
        double tol_inc = std::max(cfg.abs_tol * 0.1, cfg.rel_tol * 0.05 * scale);
        auto iv = integrate_interval(f, prev_T, T, tol_inc, cfg.max_panels, preseed, parallel);
        res.panels_used += iv.panels;
        res.function_evals += iv.evals;
        partial.add(iv.value);
        errs.add(iv.error);
        double I_j = partial.value();
        eps.push(I_j);

        double delta = iv.value;
        double eps_goal = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(I_j));

        if (!std::isnan(prev_delta)) {
            double ratio = std::abs(delta) / std::max(std::abs(prev_delta), kTiny);
            bool same_sign = delta * prev_delta > 0.0;

            plain_rem = (ratio < 0.7) ? std::abs(delta) * ratio / (1.0 - ratio)
                                      : std::numeric_limits<double>::infinity();
            if (std::abs(delta) + plain_rem <= eps_goal)
                ++plain_ok;
            else
                plain_ok = 0;
            if (plain_ok >= 2) {
                res.value = I_j;
                res.error_estimate = errs.value() + plain_rem;
                res.status = IntegralStatus::converged;
                return res;
            }

            if (same_sign && ratio >= 0.97 && std::abs(delta) > eps_goal)
                ++slow;
            else
                slow = 0;
            if (std::abs(I_j) > cfg.divergence_growth_factor * std::abs(prev_partial) &&
                std::abs(I_j) > 10.0 * eps_goal)
                ++growth;
            else
                growth = 0;
            if (slow >= 3 || growth >= 3) {
                res.value = I_j;
                res.error_estimate = errs.value();
                res.status = IntegralStatus::divergent_suspected;
                return res;
            }
        }

        if (eps.size() >= 5 && eps.last_delta() <= 0.3 * eps_goal)
            ++accel_ok;
        else
            accel_ok = 0;
        if (accel_ok >= 2) {
            res.value = *eps.estimate();
            res.error_estimate = errs.value() + eps.last_delta() + cfg.abs_tol;
            res.status = IntegralStatus::converged;
            return res;
        }

        prev_delta = delta;
        prev_partial = I_j;
        prev_T = T;
        T *= 2.0;
    }

    // Schedule exhausted: report the accelerated value with an honest
    // stabilization-based estimate.
    if (eps.size() >= 3) {
        res.value = *eps.estimate();
        res.error_estimate = errs.value() + 2.0 * eps.last_delta();
    } else {
        double rem = std::isnan(prev_delta) ? 0.0 : std::min(plain_rem, std::abs(prev_delta));
        res.value = partial.value();
        res.error_estimate = errs.value() + rem;
    }
    res.status = IntegralStatus::converged;
    return res;
}

} // namespace detail

IntegralResult integrate_halfline(const Integrand& f, const IntegrandProfile& profile,
                                  const QuadratureConfig& cfg) {
    if (!(profile.zero_exponent_hint > -1.0))
        throw std::invalid_argument("integrate_halfline: zero_exponent_hint must exceed -1");

    // The graded descent owns (0, anchor]; the doubling schedule owns the
    // rest. With an oscillation the anchor is a whole number of periods.
    double T0 = std::ldexp(1.0, cfg.schedule_min_exponent);
    double anchor = T0;
    if (profile.oscillation_scale && *profile.oscillation_scale > 0.0) {
        double period = 2.0 * std::numbers::pi / *profile.oscillation_scale;
        anchor = period * std::max(1.0, std::round(T0 / period));
    }

    IntegralResult tail = detail::integrate_tail(f, anchor, profile, cfg);

    IntegralResult res = tail;
    if (tail.status == IntegralStatus::divergent_suspected) return res;

    auto ep = detail::integrate_endpoint(f, anchor, std::abs(tail.value), cfg, parallel_enabled());
    res.panels_used += ep.panels;
    res.function_evals += ep.evals;
    if (ep.divergent) {
        res.status = IntegralStatus::divergent_suspected;
        return res;
    }
    res.value += ep.value;
    res.error_estimate += ep.error;
    return res;
}

IntegralResult integrate_improper(const Integrand& f, const QuadratureConfig& cfg) {
    return integrate_improper(f, IntegrandProfile{0.0, TailClass::oscillatory_conditional, {}}, cfg);
}

IntegralResult integrate_improper(const Integrand& f, const IntegrandProfile& profile,
                                  const QuadratureConfig& cfg) {
    IntegralResult res;
    const bool parallel = parallel_enabled();
    const double omega = std::max(profile.oscillation_scale.value_or(1.0), 1e-8);
    const double h = std::numbers::pi / omega;
    constexpr int kMaxSteps = 640;

    NeumaierSum sum;
    NeumaierSum errs;
    WynnEpsilon eps_arith;   // fed every half-period
    WynnEpsilon eps_geom;    // fed at doubling indices, for monotone slow tails
    std::vector<double> increments;
    increments.reserve(kMaxSteps);
    int next_geom_feed = 8;
    int accel_ok = 0;
    int monotone_growth = 0;

    auto finish = [&](double value, double stab) {
        res.value = value;
        res.error_estimate = errs.value() + stab;
        res.status = IntegralStatus::improper_limit;
        return res;
    };

    // A stabilized epsilon table is not enough on its own: the table also
    // regularizes genuinely divergent oscillations (it would happily assign
    // sin t its Abel value). Success additionally requires the raw
    // increments to have decayed.
    auto increments_decaying = [&](int m) {
        if (m < 6) return false;
        double early = std::abs(increments[1]) + std::abs(increments[2]);
        double late = std::abs(increments[m]) + std::abs(increments[m - 1]);
        return late <= std::max(0.6 * early, 8.0 * cfg.abs_tol);
    };

    // The half-period table is only trustworthy for genuinely alternating
    // partial sums; on monotone slowly-converging sequences its deltas can
    // shrink while the estimate is still biased. Monotone tails are instead
    // resolved by the geometrically sampled table.
    auto increments_alternating = [&](int m) {
        if (m < 6) return false;
        int changes = 0;
        for (int i = m - 5; i <= m; ++i)
            if (increments[i] * increments[i - 1] < 0.0) ++changes;
        return changes >= 3;
    };

    for (int m = 0; m < kMaxSteps; ++m) {
        double a = (m == 0) ? 0.0 : h * m;
        double b = h * (m + 1);
        double scale = std::max(std::abs(sum.value()),
                                increments.empty() ? 0.0 : std::abs(increments.front()));
        double tol_inc = std::max(cfg.abs_tol * 0.05, cfg.rel_tol * 0.02 * scale);
        detail::IntervalResult iv;
        if (m == 0) {
            // Endpoint panel may hold an algebraic singularity; descend.
            auto ep = detail::integrate_endpoint(f, b, scale, cfg, parallel);
            if (ep.divergent) {
                res.status = IntegralStatus::divergent_suspected;
                res.panels_used += ep.panels;
                res.function_evals += ep.evals;
                return res;
            }
            iv.value = ep.value;
            iv.error = ep.error;
            iv.panels = ep.panels;
            iv.evals = ep.evals;
        } else {
            iv = detail::integrate_interval(f, a, b, tol_inc, 64, 2, parallel);
        }
        res.panels_used += iv.panels;
        res.function_evals += iv.evals;
        sum.add(iv.value);
        errs.add(iv.error);
        increments.push_back(iv.value);

        double S_m = sum.value();
        eps_arith.push(S_m);

        // Stabilization below the accumulated panel noise would be
        // meaningless, so the noise floor joins the goal.
        double goal = std::max({10.0 * cfg.rel_tol * std::abs(S_m), cfg.abs_tol, errs.value()});

        if (m >= 8 && eps_arith.last_delta() <= goal)
            ++accel_ok;
        else
            accel_ok = 0;
        if (accel_ok >= 2 && increments_decaying(m) && increments_alternating(m))
            return finish(*eps_arith.estimate(), eps_arith.last_delta());

        if (m + 1 == next_geom_feed) {
            eps_geom.push(S_m);
            next_geom_feed *= 2;
            // Feeds are exponentially spaced, so one stabilized feed spans
            // the same evidence as consecutive arithmetic confirmations.
            if (eps_geom.size() >= 4 && eps_geom.last_delta() <= goal &&
                increments_decaying(m))
                return finish(*eps_geom.estimate(), eps_geom.last_delta());
        }

        // Raw partial sums already stable (fast absolute convergence).
        if (m >= 4) {
            double recent = std::abs(increments[m]) + std::abs(increments[m - 1]);
            if (recent <= 0.2 * goal) return finish(S_m, recent);
        }

        // Divergence guards: same-sign increments that keep growing, or
        // oscillating increments that refuse to decay.
        if (m >= 1) {
            bool same_sign = increments[m] * increments[m - 1] > 0.0;
            if (same_sign && std::abs(increments[m]) >= std::abs(increments[m - 1]) &&
                std::abs(increments[m]) > goal)
                ++monotone_growth;
            else
                monotone_growth = 0;
            if (monotone_growth >= 12) {
                res.value = S_m;
                res.error_estimate = errs.value();
                res.status = IntegralStatus::divergent_suspected;
                return res;
            }
        }
        if (m >= 24 && m % 8 == 0) {
            double early = 0.0, late = 0.0;
            for (int i = 1; i <= 8; ++i) early += std::abs(increments[i]);
            for (int i = m - 7; i <= m; ++i) late += std::abs(increments[i]);
            if (late >= 0.8 * early && late > 8.0 * cfg.abs_tol) {
                res.value = S_m;
                res.error_estimate = errs.value();
                res.status = IntegralStatus::divergent_suspected;
                return res;
            }
        }
    }

    // Acceleration failed to stabilize within the schedule.
    res.value = eps_arith.estimate().value_or(sum.value());
    res.error_estimate = errs.value() + eps_arith.last_delta();
    res.status = IntegralStatus::divergent_suspected;
    return res;
}

} // namespace fracmom
