#pragma once

#include <vector>

namespace fracstefan {

/// Uniform P1 mesh on Omega = (a, b) with n interior nodes plus an exterior
/// collar [a-R, a] u [b, b+R] carrying n_ext nodes per side (graded outward,
/// first spacing equal to the interior h). The node at distance R carries a
/// shoulder function that continues the data constantly to infinity, so the
/// discrete basis sums to 1 on the whole line.
struct Mesh1D {
    double a = 0.0;
    double b = 1.0;
    int n = 64;                  // interior node count
    double collar_radius = -1.0; // R; default 4*(b-a) when negative
    int n_ext = 12;              // exterior nodes per side (incl. boundary node)

    double length() const { return b - a; }
    double R() const { return collar_radius > 0.0 ? collar_radius : 4.0 * length(); }
    double h() const { return length() / (n + 1); }

    void validate() const;

    std::vector<double> interior_nodes() const;
    /// Offsets from the boundary: 0 = boundary node, last = R (shoulder node).
    std::vector<double> exterior_offsets() const;
    /// All exterior node coordinates, left side first (boundary outward),
    /// then right side (boundary outward). Size 2*n_ext.
    std::vector<double> exterior_nodes() const;
};

/// Piecewise-constant coefficient a(x) on the real line: values[k] holds on
/// (breaks[k-1], breaks[k]), with values.front()/back() extending to +-inf.
class Coefficient {
public:
    Coefficient() : values_{1.0} {}
    explicit Coefficient(double constant) : values_{constant} { check(); }
    Coefficient(std::vector<double> breaks, std::vector<double> values);

    double operator()(double x) const;
    double lower() const;  // a_*
    double upper() const;  // a^*
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& values() const { return values_; }

private:
    void check() const;
    std::vector<double> breaks_;
    std::vector<double> values_;
};

}  // namespace fracstefan
