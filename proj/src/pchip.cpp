#include "fracmom/pchip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracmom/summation.hpp"

namespace fracmom {

namespace {

// integral over [0, h] of u^m cos(t u) (C) and u^m sin(t u) (S), m = 0..3.
// Closed recursion for |t h| >= 0.5, Taylor series below.
struct TrigMoments {
    double C[4];
    double S[4];
};

TrigMoments trig_moments(double t, double h) {
    TrigMoments out{};
    double theta = t * h;
    if (std::abs(theta) < 0.5) {
        for (int m = 0; m < 4; ++m) {
            double c = 0.0, s = 0.0;
            double pc = std::pow(h, m + 1); // t^0 h^{m+1} term base
            double ps = pc * h * t;         // t^1 h^{m+2}
            double fact = 1.0;
            for (int k = 0; k < 24; ++k) {
                // cos term: (-1)^k t^{2k} h^{m+2k+1} / ((2k)! (m+2k+1))
                double sign = (k % 2) ? -1.0 : 1.0;
                c += sign * pc / (fact * (m + 2 * k + 1));
                s += sign * ps / (fact * (2 * k + 1) * (m + 2 * k + 2));
                double tt = theta * theta;
                pc *= tt;
                ps *= tt;
                fact *= (2 * k + 1) * (2 * k + 2);
                if (std::abs(pc) < 1e-20 * std::abs(c) * fact) break;
            }
            out.C[m] = c;
            out.S[m] = s;
        }
        return out;
    }
    double sn = std::sin(theta), cs = std::cos(theta);
    out.C[0] = sn / t;
    out.S[0] = (1.0 - cs) / t;
    double hm = 1.0;
    for (int m = 1; m < 4; ++m) {
        hm *= h;
        out.C[m] = (hm * sn - m * out.S[m - 1]) / t;
        out.S[m] = (-hm * cs + m * out.C[m - 1]) / t;
    }
    return out;
}

// integral over [0, h] of u^m exp(-l u), m = 0..3.
void exp_moments(double l, double h, double E[4]) {
    double lh = l * h;
    if (std::abs(lh) < 0.5) {
        for (int m = 0; m < 4; ++m) {
            double sum = 0.0;
            double p = std::pow(h, m + 1);
            double fact = 1.0;
            for (int k = 0; k < 30; ++k) {
                double sign = (k % 2) ? -1.0 : 1.0;
                sum += sign * p / (fact * (m + k + 1));
                p *= lh;
                fact *= (k + 1);
                if (std::abs(p) < 1e-20 * std::abs(sum) * fact) break;
            }
            E[m] = sum;
        }
        return;
    }
    double e = std::exp(-lh);
    E[0] = -std::expm1(-lh) / l;
    double hm = 1.0;
    for (int m = 1; m < 4; ++m) {
        hm *= h;
        E[m] = (-hm * e + m * E[m - 1]) / l;
    }
}

} // namespace

PchipInterpolant::PchipInterpolant(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() != ys_.size() || xs_.size() < 2)
        throw std::invalid_argument("PchipInterpolant: need at least two nodes");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i] > xs_[i - 1]))
            throw std::invalid_argument("PchipInterpolant: abscissas must be strictly increasing");
    rebuild();
}

void PchipInterpolant::rebuild() {
    const std::size_t n = xs_.size();
    std::vector<double> d(n - 1); // secants
    std::vector<double> hs(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        hs[i] = xs_[i + 1] - xs_[i];
        d[i] = (ys_[i + 1] - ys_[i]) / hs[i];
    }

    std::vector<double> m(n, 0.0);
    // Fritsch-Carlson interior slopes: weighted harmonic mean, zero at local
    // extrema so the interpolant never overshoots.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            double w1 = 2.0 * hs[i] + hs[i - 1];
            double w2 = hs[i] + 2.0 * hs[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // One-sided endpoint slopes with the standard monotonicity clamp.
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    if (n == 2) {
        m[0] = m[1] = d[0];
    } else {
        m[0] = endpoint(hs[0], hs[1], d[0], d[1]);
        m[n - 1] = endpoint(hs[n - 2], hs[n - 3], d[n - 2], d[n - 3]);
    }

    c0_.assign(n - 1, 0.0);
    c1_.assign(n - 1, 0.0);
    c2_.assign(n - 1, 0.0);
    c3_.assign(n - 1, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double h = hs[i];
        c0_[i] = ys_[i];
        c1_[i] = m[i];
        c2_[i] = (3.0 * d[i] - 2.0 * m[i] - m[i + 1]) / h;
        c3_[i] = (m[i] + m[i + 1] - 2.0 * d[i]) / (h * h);
    }
}

std::size_t PchipInterpolant::piece_of(double x) const {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    if (i == 0) return 0;
    if (i >= xs_.size()) return xs_.size() - 2;
    return i - 1;
}

double PchipInterpolant::operator()(double x) const {
    if (x < xs_.front() || x > xs_.back()) return 0.0;
    std::size_t i = piece_of(x);
    double u = x - xs_[i];
    return c0_[i] + u * (c1_[i] + u * (c2_[i] + u * c3_[i]));
}

double PchipInterpolant::mass() const { return integral_to(xs_.back()); }

double PchipInterpolant::integral_to(double x) const {
    if (x <= xs_.front()) return 0.0;
    NeumaierSum sum;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        double hi = std::min(x, xs_[i + 1]) - xs_[i];
        if (hi <= 0.0) break;
        sum.add(hi * (c0_[i] + hi * (c1_[i] / 2 + hi * (c2_[i] / 3 + hi * c3_[i] / 4))));
        if (x < xs_[i + 1]) break;
    }
    return sum.value();
}

std::complex<double> PchipInterpolant::fourier(double t) const {
    if (t == 0.0) return {mass(), 0.0};
    NeumaierSum re, im;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        double h = xs_[i + 1] - xs_[i];
        TrigMoments tm = trig_moments(t, h);
        double Cp = c0_[i] * tm.C[0] + c1_[i] * tm.C[1] + c2_[i] * tm.C[2] + c3_[i] * tm.C[3];
        double Sp = c0_[i] * tm.S[0] + c1_[i] * tm.S[1] + c2_[i] * tm.S[2] + c3_[i] * tm.S[3];
        double cb = std::cos(t * xs_[i]);
        double sb = std::sin(t * xs_[i]);
        re.add(cb * Cp - sb * Sp);
        im.add(sb * Cp + cb * Sp);
    }
    return {re.value(), im.value()};
}

double PchipInterpolant::laplace(double l) const {
    if (l == 0.0) return mass();
    NeumaierSum sum;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        double h = xs_[i + 1] - xs_[i];
        double E[4];
        exp_moments(l, h, E);
        double Ep = c0_[i] * E[0] + c1_[i] * E[1] + c2_[i] * E[2] + c3_[i] * E[3];
        sum.add(std::exp(-l * xs_[i]) * Ep);
    }
    return sum.value();
}

double PchipInterpolant::max_ordinate() const {
    double m = 0.0;
    for (double y : ys_) m = std::max(m, std::abs(y));
    return m;
}

void PchipInterpolant::scale(double factor) {
    for (double& y : ys_) y *= factor;
    rebuild();
}

} // namespace fracmom
