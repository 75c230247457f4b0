#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "fracstefan/graphs.hpp"

using namespace fracstefan;

namespace {

MonotoneGraph melt_graph() {  // b = id, lambda = 1
    return MonotoneGraph::two_phase(PiecewiseLinear({0.0}, {0.0}, 1.0, 1.0), 1.0);
}

// independent oracle: bisection for the root of a monotone scalar equation
double bisect(double lo, double hi, const std::function<double(double)>& f, double tol) {
    double flo = f(lo);
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm <= 0.0) == (flo <= 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
        if (hi - lo < tol) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("gamma branches of the melting graph") {
    auto g = melt_graph();
    CHECK(g.gamma(-2.0) == doctest::Approx(-2.0));
    CHECK(g.gamma(0.5) == doctest::Approx(0.0));
    CHECK(g.gamma(2.0) == doctest::Approx(1.0));
    CHECK(g.gamma(0.0) == 0.0);
    CHECK(g.lipschitz_gamma() == doctest::Approx(1.0));
}

TEST_CASE("beta intervals") {
    auto g = melt_graph();
    auto at0 = g.beta_interval(0.0);
    CHECK(at0.lo == doctest::Approx(0.0));
    CHECK(at0.hi == doctest::Approx(1.0));
    auto neg = g.beta_interval(-1.0);
    CHECK(neg.lo == doctest::Approx(-1.0));
    CHECK(neg.hi == doctest::Approx(-1.0));

    auto g2 = MonotoneGraph::two_phase(PiecewiseLinear({0.0}, {0.0}, 2.0, 2.0), 0.5);
    auto p = g2.beta_interval(1.0);
    CHECK(p.lo == doctest::Approx(2.5));
    CHECK(p.hi == doctest::Approx(2.5));
}

TEST_CASE("primitive j and its conjugate") {
    auto g = melt_graph();
    CHECK(g.primitive_j(-2.0) == doctest::Approx(2.0));
    CHECK(g.primitive_j(1.0) == doctest::Approx(0.0));
    CHECK(g.primitive_j(0.0) == 0.0);

    // dense grid maximization oracle for j*(1), step 1e-4
    double best = -1e300;
    for (double r = -6.0; r <= 6.0; r += 1e-4)
        best = std::max(best, r * 1.0 - g.primitive_j(r));
    CHECK(g.conjugate_j(1.0) == doctest::Approx(best).epsilon(1e-7));
    CHECK(g.conjugate_j(1.0) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("one-phase conjugate diverges below the range") {
    auto g = MonotoneGraph::one_phase(PiecewiseLinear({0.0}, {0.0}, 1.0, 1.0), 1.0);
    CHECK(std::isinf(g.conjugate_j(-0.5)));
    CHECK(g.conjugate_j(0.0) == doctest::Approx(0.0));
}

TEST_CASE("regularization") {
    auto base = MonotoneGraph::one_phase(PiecewiseLinear({0.0}, {0.0}, 1.0, 1.0), 1.0);
    auto reg = base.regularized(0.1);
    CHECK(reg.gamma(0.0) == doctest::Approx(0.0));
    CHECK(reg.gamma(0.5) == doctest::Approx(0.05));  // plateau + nu*r at lambda/2
    CHECK(reg.lipschitz_gamma() == doctest::Approx(base.lipschitz_gamma() + 0.1));
    CHECK_THROWS(base.regularized(0.0));
    CHECK_THROWS(base.regularized(-1.0));

    // beta^nu(0.3) cross-checked by bisection inversion of gamma^nu to 1e-10
    const double r = 0.3;
    const double oracle =
        bisect(-10.0, 10.0, [&](double y) { return reg.gamma(y) - r; }, 1e-12);
    const auto bi = reg.beta_interval(r);
    CHECK(bi.lo == doctest::Approx(bi.hi));
    CHECK(bi.lo == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(bi.lo == doctest::Approx(1.3 / 1.1).epsilon(1e-12));

    // resolvent formula of the regularized law: beta^nu(r) = (r - (Id+nu beta)^{-1}(r))/nu
    const double res = base.yosida_resolvent(0.1, r);
    CHECK((r - res) / 0.1 == doctest::Approx(bi.lo).epsilon(1e-12));
}

TEST_CASE("yosida resolvent") {
    auto id = MonotoneGraph::identity();
    CHECK(id.yosida_resolvent(1.0, 2.0) == doctest::Approx(1.0));
    CHECK(melt_graph().yosida_resolvent(0.7, 0.0) == doctest::Approx(0.0));

    // beta = id + H, nu = 0.5, r = 1.2: interval bisection oracle on
    // f(x) = x + nu*beta(x) - r using the single-valued selection off 0
    auto g = melt_graph();
    const double nu = 0.5, r = 1.2;
    auto f = [&](double x) {
        const auto b = g.beta_interval(x);
        const double bx = x > 0.0 ? b.lo : (x < 0.0 ? b.hi : 0.0);
        return x + nu * bx - r;
    };
    const double oracle = bisect(1e-9, 10.0, f, 1e-13);
    CHECK(g.yosida_resolvent(nu, r) == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(g.yosida_resolvent(nu, r) == doctest::Approx(7.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("property suite on sampled graphs") {
    std::mt19937_64 rng(20240913ull);
    std::uniform_real_distribution<double> U(0.0, 1.0);

    for (int trial = 0; trial < 12; ++trial) {
        // random strictly increasing b with a few breakpoints
        std::vector<double> bx{-1.5, 0.0, 0.8};
        std::vector<double> slopes(4);
        for (auto& sl : slopes) sl = 0.4 + 2.0 * U(rng);
        auto b = PiecewiseLinear::from_slopes(bx, slopes, 0.0, 0.0);
        const double lambda = trial % 3 == 0 ? 0.0 : 2.0 * U(rng);
        auto g = trial % 4 == 3 && lambda > 0.0
                     ? MonotoneGraph::one_phase(b, lambda).regularized(0.05 + U(rng))
                     : MonotoneGraph::two_phase(b, lambda);
        const double C = g.lipschitz_gamma();

        double r_prev = -10.0, g_prev = g.gamma(-10.0);
        for (int k = 1; k <= 800; ++k) {
            const double r = -10.0 + 20.0 * k / 800.0;
            const double gr = g.gamma(r);
            // monotone and Lipschitz with the advertised constant
            CHECK(gr - g_prev >= -1e-12);
            CHECK(gr - g_prev <= C * (r - r_prev) + 1e-12);

            // inverse-graph consistency: r in beta(gamma(r))
            const auto bi = g.beta_interval(gr);
            CHECK(!bi.empty());
            CHECK(r >= bi.lo - 1e-12);
            CHECK(r <= bi.hi + 1e-12);

            // Fenchel-Young, with equality at v = gamma(r)
            const double v = -3.0 + 6.0 * U(rng);
            const double fy = g.primitive_j(r) + g.conjugate_j(v) - r * v;
            CHECK(fy >= -1e-10);
            const double fy_eq = g.primitive_j(r) + g.conjugate_j(gr) - r * gr;
            CHECK(std::abs(fy_eq) <= 1e-8 * (1.0 + std::abs(r * gr)));

            r_prev = r; g_prev = gr;
        }

        // resolvent nonexpansiveness
        const double nu = 0.1 + U(rng);
        for (int k = 0; k < 50; ++k) {
            const double r1 = -8.0 + 16.0 * U(rng), r2 = -8.0 + 16.0 * U(rng);
            const double d = std::abs(g.yosida_resolvent(nu, r1) - g.yosida_resolvent(nu, r2));
            CHECK(d <= std::abs(r1 - r2) + 1e-12);
        }
    }
}

TEST_CASE("gamma^nu converges uniformly at rate nu") {
    auto base = MonotoneGraph::one_phase(PiecewiseLinear({0.0}, {0.0}, 1.3, 1.3), 0.7);
    for (double nu : {0.2, 0.05, 0.01}) {
        auto reg = base.regularized(nu);
        double worst = 0.0;
        for (double r = -5.0; r <= 5.0; r += 0.01)
            worst = std::max(worst, std::abs(reg.gamma(r) - base.gamma(r)));
        CHECK(worst <= nu * 5.0 + 1e-14);
        CHECK(worst >= nu * 5.0 - 1e-9);  // the sup is attained at the grid edge
    }
}

TEST_CASE("chi selection stays within the Heaviside graph") {
    auto g = melt_graph();
    for (double eta : {-2.0, -0.3, 0.0, 0.2, 0.7, 1.0, 1.4, 3.0}) {
        const double th = g.gamma(eta);
        const double chi = g.chi_select(th, eta);
        CHECK(chi >= 0.0);
        CHECK(chi <= 1.0);
        if (th < 0.0) CHECK(chi == 0.0);
        if (th > 0.0) CHECK(chi == 1.0);
        // the decomposition eta = b(theta) + lambda*chi is exact
        CHECK(g.b()(th) + g.lambda() * chi == doctest::Approx(eta).epsilon(1e-13));
    }
}
