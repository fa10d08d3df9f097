#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace fracmom {

/// Wynn's epsilon algorithm over a growing sequence, evaluated on a sliding
/// window of the most recent terms. Each push rebuilds the lozenge and
/// selects the even-column entry whose neighborhood is most stable; once a
/// column is (nearly) exact, deeper columns amplify roundoff and are never
/// selected. estimate() is the current pick, last_delta() how much it moved
/// on the last push.
class WynnEpsilon {
public:
    void push(double value);

    std::optional<double> estimate() const { return estimate_; }

    /// |change of the estimate on the last push|; infinity until two
    /// estimates exist.
    double last_delta() const { return last_delta_; }

    std::size_t size() const { return count_; }

    void reset();

private:
    std::vector<double> window_;
    std::optional<double> estimate_;
    double last_delta_ = 0.0;
    std::size_t count_ = 0;
};

struct ExtrapolationResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Polynomial (Neville) extrapolation of y(x) to x = 0. The error estimate
/// is the difference between the last two diagonal entries.
ExtrapolationResult neville_to_zero(const std::vector<double>& xs,
                                    const std::vector<double>& ys);

/// First k primes.
std::vector<std::int64_t> first_primes(int k);

} // namespace fracmom
