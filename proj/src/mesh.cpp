#include "fracstefan/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracstefan {

void Mesh1D::validate() const {
    if (!(b > a)) throw std::invalid_argument("Mesh1D: need b > a");
    if (n < 2) throw std::invalid_argument("Mesh1D: need n >= 2 interior nodes");
    if (n_ext < 2) throw std::invalid_argument("Mesh1D: need n_ext >= 2 exterior nodes per side");
    if (!(R() >= length())) throw std::invalid_argument("Mesh1D: collar radius must be >= b-a");
}

std::vector<double> Mesh1D::interior_nodes() const {
    std::vector<double> x(n);
    const double hh = h();
    for (int i = 0; i < n; ++i) x[i] = a + (i + 1) * hh;
    return x;
}

std::vector<double> Mesh1D::exterior_offsets() const {
    const double hh = h();
    const double extent = R();
    const int m = n_ext;
    std::vector<double> offs(m);
    if ((m - 1) * hh >= extent) {
        for (int j = 0; j < m; ++j) offs[j] = extent * j / (m - 1);
        return offs;
    }
    // first spacing h, then geometric growth chosen to reach exactly R
    double lo = 1.0 + 1e-12, hi = 16.0;
    for (int it = 0; it < 200; ++it) {
        const double rho = 0.5 * (lo + hi);
        const double total = hh * (std::pow(rho, m - 1) - 1.0) / (rho - 1.0);
        (total < extent ? lo : hi) = rho;
    }
    const double rho = 0.5 * (lo + hi);
    offs[0] = 0.0;
    double step = hh;
    for (int j = 1; j < m; ++j) {
        offs[j] = offs[j - 1] + step;
        step *= rho;
    }
    offs[m - 1] = extent;
    return offs;
}

std::vector<double> Mesh1D::exterior_nodes() const {
    const auto offs = exterior_offsets();
    std::vector<double> nodes;
    nodes.reserve(2 * offs.size());
    for (double o : offs) nodes.push_back(a - o);
    for (double o : offs) nodes.push_back(b + o);
    return nodes;
}

Coefficient::Coefficient(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
    if (values_.size() != breaks_.size() + 1)
        throw std::invalid_argument("Coefficient: need one value per piece");
    for (std::size_t k = 1; k < breaks_.size(); ++k)
        if (!(breaks_[k] > breaks_[k - 1]))
            throw std::invalid_argument("Coefficient: breaks not increasing");
    check();
}

void Coefficient::check() const {
    for (double v : values_)
        if (!(v > 0.0)) throw std::invalid_argument("Coefficient: values must be positive");
}

double Coefficient::operator()(double x) const {
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    return values_[static_cast<std::size_t>(it - breaks_.begin())];
}

double Coefficient::lower() const { return *std::min_element(values_.begin(), values_.end()); }
double Coefficient::upper() const { return *std::max_element(values_.begin(), values_.end()); }

}  // namespace fracstefan
