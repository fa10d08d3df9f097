#pragma once

#include <complex>
#include <vector>

namespace fracmom {

/// Shape-preserving piecewise-cubic interpolant (Fritsch-Carlson slopes).
/// Besides pointwise evaluation it integrates each cubic piece against
/// cos(t x), sin(t x) and exp(-l x) in closed form, so Fourier and Laplace
/// transforms of a tabulated density cost O(#pieces) at any frequency with
/// no aliasing. The trigonometric piece moments switch to their Taylor
/// series when t*h is small, where the upward recursion would cancel.
class PchipInterpolant {
public:
    PchipInterpolant(std::vector<double> xs, std::vector<double> ys);

    double operator()(double x) const; // 0 outside [front, back]

    double front() const { return xs_.front(); }
    double back() const { return xs_.back(); }

    /// Exact integral of the interpolant over its support.
    double mass() const;

    /// Integral of the interpolant over [front, x].
    double integral_to(double x) const;

    /// Integral of p(x) * exp(i t x) dx over the support.
    std::complex<double> fourier(double t) const;

    /// Integral of p(x) * exp(-l x) dx over the support, l >= 0.
    double laplace(double l) const;

    double max_ordinate() const;
    double back_ordinate() const { return ys_.back(); }

    /// Scale all ordinates (renormalization).
    void scale(double factor);

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    // per-piece cubic coefficients in the local variable u = x - x_i
    std::vector<double> c0_, c1_, c2_, c3_;

    std::size_t piece_of(double x) const;
    void rebuild();
};

} // namespace fracmom
