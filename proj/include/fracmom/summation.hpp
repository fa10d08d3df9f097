#pragma once

#include <cmath>

namespace fracmom {

/// Neumaier compensated accumulator. Accumulation order is part of the
/// result contract: callers that need reproducible sums must feed terms
/// in a fixed order.
class NeumaierSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace fracmom
