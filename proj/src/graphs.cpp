#include "fracstefan/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fracstefan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Normalize b: strictly increasing, breakpoint at 0, value b(0) = 0.
PiecewiseLinear normalize_b(const PiecewiseLinear& b) {
    if (b.min_slope() <= 0.0)
        throw std::invalid_argument("MonotoneGraph: b must be strictly increasing");
    std::vector<double> xs = b.breakpoints();
    std::vector<double> ys = b.values();
    const double b0 = b(0.0);
    auto it = std::lower_bound(xs.begin(), xs.end(), 0.0);
    if (it == xs.end() || *it != 0.0) {
        const auto pos = it - xs.begin();
        xs.insert(it, 0.0);
        ys.insert(ys.begin() + pos, b0);
    }
    for (auto& y : ys) y -= b0;
    return PiecewiseLinear(std::move(xs), std::move(ys), b.slope_left(), b.slope_right());
}

// gamma for the two-phase graph: b^{-1}(r) for r <= 0, 0 on [0, lambda],
// b^{-1}(r - lambda) for r >= lambda.
PiecewiseLinear build_gamma_two_phase(const PiecewiseLinear& b, double lambda) {
    std::vector<double> rs, ts;
    const auto& bx = b.breakpoints();
    const auto& by = b.values();
    for (std::size_t k = 0; k < bx.size(); ++k) {
        if (bx[k] < 0.0) { rs.push_back(by[k]); ts.push_back(bx[k]); }
    }
    rs.push_back(0.0); ts.push_back(0.0);
    if (lambda > 0.0) { rs.push_back(lambda); ts.push_back(0.0); }
    for (std::size_t k = 0; k < bx.size(); ++k) {
        if (bx[k] > 0.0) { rs.push_back(by[k] + lambda); ts.push_back(bx[k]); }
    }
    return PiecewiseLinear(std::move(rs), std::move(ts),
                           1.0 / b.slope_left(), 1.0 / b.slope_right());
}

// gamma for the one-phase graph: 0 for r <= lambda, b^{-1}(r - lambda) beyond.
PiecewiseLinear build_gamma_one_phase(const PiecewiseLinear& b, double lambda) {
    std::vector<double> rs, ts;
    rs.push_back(lambda); ts.push_back(0.0);
    const auto& bx = b.breakpoints();
    const auto& by = b.values();
    for (std::size_t k = 0; k < bx.size(); ++k) {
        if (bx[k] > 0.0) { rs.push_back(by[k] + lambda); ts.push_back(bx[k]); }
    }
    return PiecewiseLinear(std::move(rs), std::move(ts), 0.0, 1.0 / b.slope_right());
}

}  // namespace

MonotoneGraph::MonotoneGraph(GraphKind kind, PiecewiseLinear b, double lambda,
                             double nu, PiecewiseLinear gamma)
    : kind_(kind), b_(std::move(b)), lambda_(lambda), nu_(nu),
      gamma_(std::move(gamma)), lipschitz_gamma_(gamma_.max_slope()) {}

MonotoneGraph MonotoneGraph::two_phase(PiecewiseLinear b, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("MonotoneGraph: lambda must be >= 0");
    PiecewiseLinear bn = normalize_b(b);
    PiecewiseLinear g = build_gamma_two_phase(bn, lambda);
    return MonotoneGraph(GraphKind::TwoPhase, std::move(bn), lambda, 0.0, std::move(g));
}

MonotoneGraph MonotoneGraph::one_phase(PiecewiseLinear b, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("MonotoneGraph: one-phase needs lambda > 0");
    PiecewiseLinear bn = normalize_b(b);
    PiecewiseLinear g = build_gamma_one_phase(bn, lambda);
    return MonotoneGraph(GraphKind::OnePhase, std::move(bn), lambda, 0.0, std::move(g));
}

MonotoneGraph MonotoneGraph::identity() {
    PiecewiseLinear id({0.0}, {0.0}, 1.0, 1.0);
    return two_phase(std::move(id), 0.0);
}

MonotoneGraph MonotoneGraph::regularized(double nu) const {
    if (kind_ != GraphKind::OnePhase)
        throw std::invalid_argument("MonotoneGraph::regularized: base must be one-phase");
    if (!(nu > 0.0))
        throw std::invalid_argument("MonotoneGraph::regularized: nu must be > 0");
    return MonotoneGraph(GraphKind::Regularized, b_, lambda_, nu,
                         gamma_.with_slope_offset(nu));
}

Interval MonotoneGraph::beta_interval(double theta) const {
    switch (kind_) {
        case GraphKind::TwoPhase:
            if (theta < 0.0) { const double e = b_(theta); return {e, e}; }
            if (theta > 0.0) { const double e = b_(theta) + lambda_; return {e, e}; }
            return {0.0, lambda_};
        case GraphKind::OnePhase:
            if (theta < 0.0) return {kInf, -kInf};  // empty: beta undefined for theta < 0
            if (theta > 0.0) { const double e = b_(theta) + lambda_; return {e, e}; }
            return {-kInf, lambda_};
        case GraphKind::Regularized: {
            const double e = gamma_.invert(theta);
            return {e, e};
        }
    }
    return {kInf, -kInf};
}

double MonotoneGraph::primitive_j(double r) const {
    return gamma_.primitive(r, 0.0);
}

double MonotoneGraph::conjugate_j(double v) const {
    const double r = gamma_.invert_any(v);
    if (std::isnan(r)) return kInf;  // v outside the closure of range(gamma)
    return r * v - primitive_j(r);
}

double MonotoneGraph::yosida_resolvent(double nu, double r) const {
    if (!(nu > 0.0)) throw std::invalid_argument("yosida_resolvent: nu must be > 0");
    // x + nu*beta(x) ∋ r with x = gamma(y) for the enthalpy section y:
    // gamma(y) + nu*y = r, strictly increasing in y.
    const double y = gamma_.with_slope_offset(nu).invert(r);
    return r - nu * y;
}

double MonotoneGraph::chi_select(double theta, double eta) const {
    if (lambda_ > 0.0)
        return std::clamp((eta - b_(theta)) / lambda_, 0.0, 1.0);
    return theta > 0.0 ? 1.0 : 0.0;
}

}  // namespace fracstefan
