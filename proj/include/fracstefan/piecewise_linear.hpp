#pragma once

#include <cstddef>
#include <vector>

namespace fracstefan {

/// Continuous piecewise-linear function on the whole real line, given by
/// breakpoints with values and two extension slopes beyond the first/last
/// breakpoint. Breakpoints are strictly increasing.
class PiecewiseLinear {
public:
    PiecewiseLinear(std::vector<double> xs, std::vector<double> ys,
                    double slope_left, double slope_right);

    /// Build from per-interval slopes. slopes[0] applies left of xs[0],
    /// slopes[k] on (xs[k-1], xs[k]), slopes.back() right of xs.back().
    /// The function is anchored by value anchor_y at anchor_x.
    static PiecewiseLinear from_slopes(const std::vector<double>& xs,
                                       const std::vector<double>& slopes,
                                       double anchor_x, double anchor_y);

    double operator()(double x) const;

    /// One-sided derivative from the right.
    double slope_right_of(double x) const;

    double min_slope() const;
    double max_slope() const;

    /// Inverse evaluation for a strictly increasing function (all slopes > 0).
    double invert(double y) const;

    /// Some x with f(x) = y for a nondecreasing function; if y falls on a flat
    /// stretch any point of it may be returned. Returns NaN when y is not
    /// attained (flat extension below/above the range).
    double invert_any(double y) const;

    /// Primitive F(x) = integral of f from anchor to x.
    double primitive(double x, double anchor) const;

    std::size_t size() const { return xs_.size(); }
    const std::vector<double>& breakpoints() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }
    double slope_left() const { return slope_left_; }
    double slope_right() const { return slope_right_; }

    /// New function with the given constant added to every slope
    /// (values become ys[k] + c*xs[k]).
    PiecewiseLinear with_slope_offset(double c) const;

private:
    std::vector<double> xs_, ys_;
    double slope_left_, slope_right_;
    std::vector<double> cum_;  // primitive values at breakpoints, cum_[0] = 0

    double primitive_from_first(double x) const;
};

}  // namespace fracstefan
