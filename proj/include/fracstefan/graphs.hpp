#pragma once

#include "fracstefan/piecewise_linear.hpp"

namespace fracstefan {

enum class GraphKind { TwoPhase, OnePhase, Regularized };

/// Closed interval [lo, hi]; empty when lo > hi.
struct Interval {
    double lo, hi;
    bool empty() const { return !(lo <= hi); }
};

/// The temperature-enthalpy law: a maximal monotone graph
///   beta(theta) = b(theta) + lambda * H(theta)
/// with b piecewise linear, strictly increasing, b(0) = 0, and its
/// single-valued Lipschitz inverse gamma = beta^{-1}. The one-phase variant
/// has gamma(r) = 0 for r <= lambda; the regularized variant is
/// gamma_nu = gamma_one_phase + nu * id.
class MonotoneGraph {
public:
    static MonotoneGraph two_phase(PiecewiseLinear b, double lambda);
    static MonotoneGraph one_phase(PiecewiseLinear b, double lambda);
    /// Linear law eta = theta (b = id, lambda = 0); reduces the evolution to
    /// the fractional heat equation.
    static MonotoneGraph identity();
    /// gamma_nu = gamma + nu*id. Requires kind == OnePhase and nu > 0.
    MonotoneGraph regularized(double nu) const;

    double gamma(double r) const { return gamma_(r); }
    /// Right derivative of gamma (used as the Newton slope on plateau edges).
    double gamma_slope(double r) const { return gamma_.slope_right_of(r); }

    /// beta(theta) as an interval: a point off the plateau, [b(0), b(0)+lambda]
    /// at theta = 0 (two-phase), (-inf, lambda] at theta = 0 (one-phase).
    /// Empty for theta outside the domain of beta.
    Interval beta_interval(double theta) const;

    /// Primitive j of gamma with j(0) = 0. Convex, quadratic growth.
    double primitive_j(double r) const;

    /// Convex conjugate j*(v) = sup_r (rv - j(r)); +inf where the sup diverges
    /// (one-phase kind with v < 0).
    double conjugate_j(double v) const;

    /// Resolvent (Id + nu*beta)^{-1}(r): the unique x with x + nu*beta(x) ∋ r.
    double yosida_resolvent(double nu, double r) const;

    /// Measurable phase-fraction selection chi in H(theta) consistent with
    /// eta = b(theta) + lambda*chi: clamp((eta - b(theta))/lambda, 0, 1) for
    /// lambda > 0, Heaviside with chi(0) = 0 for lambda = 0.
    double chi_select(double theta, double eta) const;

    double lipschitz_gamma() const { return lipschitz_gamma_; }
    double lambda() const { return lambda_; }
    double nu() const { return nu_; }
    GraphKind kind() const { return kind_; }
    const PiecewiseLinear& b() const { return b_; }
    const PiecewiseLinear& gamma_pl() const { return gamma_; }

private:
    MonotoneGraph(GraphKind kind, PiecewiseLinear b, double lambda, double nu,
                  PiecewiseLinear gamma);

    GraphKind kind_;
    PiecewiseLinear b_;
    double lambda_;
    double nu_;
    PiecewiseLinear gamma_;
    double lipschitz_gamma_;
};

}  // namespace fracstefan
