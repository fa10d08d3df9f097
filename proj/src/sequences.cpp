#include "fracmom/sequences.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracmom {

void WynnEpsilon::push(double value) {
    constexpr std::size_t kWindow = 48;
    window_.push_back(value);
    if (window_.size() > kWindow) window_.erase(window_.begin());
    ++count_;

    if (window_.size() < 3) {
        if (estimate_) last_delta_ = std::abs(value - *estimate_);
        else last_delta_ = std::numeric_limits<double>::infinity();
        estimate_ = value;
        return;
    }

    // Full lozenge over the window. prev/curr hold two consecutive columns;
    // even columns are estimates (odd ones are reciprocal differences). A
    // column earns trust when its last entries agree with each other and
    // with the previous even column; degenerate denominators stop the
    // descent before they can inject garbage.
    const std::size_t n = window_.size();
    std::vector<double> prev(n + 1, 0.0); // epsilon_{-1}
    std::vector<double> curr = window_;   // epsilon_0
    double best = curr.back();
    double best_score = std::abs(curr[n - 1] - curr[n - 2]);
    double even_tail = curr.back();

    std::size_t len = n;
    for (int k = 1; len >= 2 && k <= 40; ++k) {
        std::vector<double> next(len - 1);
        bool degenerate = false;
        for (std::size_t i = 0; i + 1 < len; ++i) {
            double diff = curr[i + 1] - curr[i];
            if (std::abs(diff) < 1e-305) {
                degenerate = true;
                break;
            }
            next[i] = prev[i + 1] + 1.0 / diff;
        }
        if (degenerate) break;
        prev = std::move(curr);
        curr = std::move(next);
        --len;
        if (k % 2 == 0) {
            double tail = curr[len - 1];
            // internal agreement of the column's two newest entries; the
            // cross-column distance would penalize exactly the improvement
            // the column made
            double score = (len >= 2) ? std::abs(tail - curr[len - 2])
                                      : std::abs(tail - even_tail);
            if (score <= best_score) {
                best_score = score;
                best = tail;
            }
            even_tail = tail;
        }
    }

    if (estimate_) last_delta_ = std::abs(best - *estimate_);
    estimate_ = best;
}

void WynnEpsilon::reset() {
    window_.clear();
    estimate_.reset();
    last_delta_ = 0.0;
    count_ = 0;
}

ExtrapolationResult neville_to_zero(const std::vector<double>& xs,
                                    const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("neville_to_zero: mismatched or empty inputs");
    std::vector<double> p = ys;
    double last = p[0];
    double second_last = p[0];
    for (std::size_t m = 1; m < p.size(); ++m) {
        for (std::size_t i = 0; i + m < p.size(); ++i) {
            double denom = xs[i] - xs[i + m];
            p[i] = (0.0 - xs[i + m]) * (p[i] - p[i + 1]) / denom + p[i + 1];
        }
        second_last = last;
        last = p[0];
    }
    ExtrapolationResult r;
    r.value = last;
    r.error_estimate = (xs.size() > 1) ? std::abs(last - second_last)
                                       : std::numeric_limits<double>::infinity();
    return r;
}

std::vector<std::int64_t> first_primes(int k) {
    if (k < 1) throw std::invalid_argument("first_primes: k must be >= 1");
    // Upper bound on p_k, loose for small k.
    std::size_t bound = 32;
    if (k >= 6) {
        double kk = static_cast<double>(k);
        bound = static_cast<std::size_t>(kk * (std::log(kk) + std::log(std::log(kk))) * 1.2) + 16;
    }
    std::vector<std::int64_t> primes;
    for (;;) {
        std::vector<bool> composite(bound + 1, false);
        primes.clear();
        for (std::size_t i = 2; i <= bound; ++i) {
            if (!composite[i]) {
                primes.push_back(static_cast<std::int64_t>(i));
                if (static_cast<int>(primes.size()) == k) return primes;
                for (std::size_t j = i * i; j <= bound; j += i) composite[j] = true;
            }
        }
        bound *= 2;
    }
}

} // namespace fracmom
