#include "fracstefan/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracstefan {

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys,
                                 double slope_left, double slope_right)
    : xs_(std::move(xs)), ys_(std::move(ys)),
      slope_left_(slope_left), slope_right_(slope_right) {
    if (xs_.empty() || xs_.size() != ys_.size())
        throw std::invalid_argument("PiecewiseLinear: breakpoints/values mismatch");
    for (std::size_t k = 1; k < xs_.size(); ++k)
        if (!(xs_[k] > xs_[k - 1]))
            throw std::invalid_argument("PiecewiseLinear: breakpoints not strictly increasing");
    cum_.resize(xs_.size(), 0.0);
    for (std::size_t k = 1; k < xs_.size(); ++k)
        cum_[k] = cum_[k - 1] + 0.5 * (ys_[k] + ys_[k - 1]) * (xs_[k] - xs_[k - 1]);
}

PiecewiseLinear PiecewiseLinear::from_slopes(const std::vector<double>& xs,
                                             const std::vector<double>& slopes,
                                             double anchor_x, double anchor_y) {
    if (slopes.size() != xs.size() + 1)
        throw std::invalid_argument("PiecewiseLinear::from_slopes: need one slope per interval");
    std::vector<double> ys(xs.size(), 0.0);
    for (std::size_t k = 1; k < xs.size(); ++k)
        ys[k] = ys[k - 1] + slopes[k] * (xs[k] - xs[k - 1]);
    PiecewiseLinear f(xs, ys, slopes.front(), slopes.back());
    const double shift = anchor_y - f(anchor_x);
    for (auto& y : f.ys_) y += shift;
    return f;
}

double PiecewiseLinear::operator()(double x) const {
    if (x <= xs_.front()) return ys_.front() + slope_left_ * (x - xs_.front());
    if (x >= xs_.back()) return ys_.back() + slope_right_ * (x - xs_.back());
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - xs_.begin());
    const double t = (x - xs_[k - 1]) / (xs_[k] - xs_[k - 1]);
    return ys_[k - 1] + t * (ys_[k] - ys_[k - 1]);
}

double PiecewiseLinear::slope_right_of(double x) const {
    if (x < xs_.front()) return slope_left_;
    if (x >= xs_.back()) return slope_right_;
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - xs_.begin());
    return (ys_[k] - ys_[k - 1]) / (xs_[k] - xs_[k - 1]);
}

double PiecewiseLinear::min_slope() const {
    double m = std::min(slope_left_, slope_right_);
    for (std::size_t k = 1; k < xs_.size(); ++k)
        m = std::min(m, (ys_[k] - ys_[k - 1]) / (xs_[k] - xs_[k - 1]));
    return m;
}

double PiecewiseLinear::max_slope() const {
    double m = std::max(slope_left_, slope_right_);
    for (std::size_t k = 1; k < xs_.size(); ++k)
        m = std::max(m, (ys_[k] - ys_[k - 1]) / (xs_[k] - xs_[k - 1]));
    return m;
}

double PiecewiseLinear::invert(double y) const {
    if (min_slope() <= 0.0)
        throw std::logic_error("PiecewiseLinear::invert requires strictly increasing function");
    if (y <= ys_.front()) return xs_.front() + (y - ys_.front()) / slope_left_;
    if (y >= ys_.back()) return xs_.back() + (y - ys_.back()) / slope_right_;
    const auto it = std::upper_bound(ys_.begin(), ys_.end(), y);
    const std::size_t k = static_cast<std::size_t>(it - ys_.begin());
    const double t = (y - ys_[k - 1]) / (ys_[k] - ys_[k - 1]);
    return xs_[k - 1] + t * (xs_[k] - xs_[k - 1]);
}

double PiecewiseLinear::invert_any(double y) const {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (y < ys_.front()) {
        if (slope_left_ <= 0.0) return nan;
        return xs_.front() + (y - ys_.front()) / slope_left_;
    }
    if (y > ys_.back()) {
        if (slope_right_ <= 0.0) return nan;
        return xs_.back() + (y - ys_.back()) / slope_right_;
    }
    // y within the breakpoint range of a nondecreasing function: always attained
    const auto it = std::lower_bound(ys_.begin(), ys_.end(), y);
    const std::size_t k = static_cast<std::size_t>(it - ys_.begin());
    if (ys_[k] == y) return xs_[k];
    const double t = (y - ys_[k - 1]) / (ys_[k] - ys_[k - 1]);
    return xs_[k - 1] + t * (xs_[k] - xs_[k - 1]);
}

double PiecewiseLinear::primitive_from_first(double x) const {
    if (x <= xs_.front()) {
        const double d = x - xs_.front();
        return ys_.front() * d + 0.5 * slope_left_ * d * d;
    }
    if (x >= xs_.back()) {
        const double d = x - xs_.back();
        return cum_.back() + ys_.back() * d + 0.5 * slope_right_ * d * d;
    }
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - xs_.begin());
    const double d = x - xs_[k - 1];
    const double s = (ys_[k] - ys_[k - 1]) / (xs_[k] - xs_[k - 1]);
    return cum_[k - 1] + ys_[k - 1] * d + 0.5 * s * d * d;
}

double PiecewiseLinear::primitive(double x, double anchor) const {
    return primitive_from_first(x) - primitive_from_first(anchor);
}

PiecewiseLinear PiecewiseLinear::with_slope_offset(double c) const {
    std::vector<double> ys(ys_);
    for (std::size_t k = 0; k < xs_.size(); ++k) ys[k] += c * xs_[k];
    return PiecewiseLinear(xs_, std::move(ys), slope_left_ + c, slope_right_ + c);
}

}  // namespace fracstefan
