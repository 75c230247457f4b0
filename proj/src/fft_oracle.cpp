#include "fracstefan/fft_oracle.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

namespace fracstefan {

namespace {

std::mutex fftw_plan_mutex;  // FFTW planning is not thread-safe

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

bool support_near_edge(std::span<const double> u) {
    const std::size_t n = u.size();
    double amax = 0.0;
    for (double v : u) amax = std::max(amax, std::abs(v));
    if (amax == 0.0) return false;
    const double tol = 1e-13 * amax;
    std::size_t lo = 0, hi = n - 1;
    while (lo < n && std::abs(u[lo]) <= tol) ++lo;
    while (hi > 0 && std::abs(u[hi]) <= tol) --hi;
    const std::size_t margin = n / 10;
    return lo < margin || hi + margin >= n;
}

// multiply the half-spectrum by m(xi), with m(0) = 0 and the Nyquist bin
// zeroed (its image must stay real for the inverse transform)
template <typename Symbol>
SymbolApplyResult apply_symbol(std::span<const double> u, double dx, Symbol sym) {
    const std::size_t n = u.size();
    if (!is_pow2(n)) throw std::invalid_argument("symbol apply: length must be a power of two");
    if (!(dx > 0.0)) throw std::invalid_argument("symbol apply: dx must be positive");

    SymbolApplyResult res;
    res.aliasing_warning = support_near_edge(u);
    res.values.resize(n);

    std::vector<double> in(u.begin(), u.end());
    std::vector<std::complex<double>> spec(n / 2 + 1);
    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                   reinterpret_cast<fftw_complex*>(spec.data()),
                                   FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                   reinterpret_cast<fftw_complex*>(spec.data()),
                                   res.values.data(), FFTW_ESTIMATE);
    }
    fftw_execute(fwd);
    const double dxi = 1.0 / (dx * static_cast<double>(n));
    spec[0] = 0.0;
    for (std::size_t k = 1; k < n / 2; ++k) spec[k] *= sym(k * dxi);
    spec[n / 2] = 0.0;
    fftw_execute(bwd);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : res.values) v *= scale;
    return res;
}

}  // namespace

SymbolApplyResult riesz_symbol_apply(double s, std::span<const double> u, double dx) {
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("riesz_symbol_apply: s in (0,1]");
    return apply_symbol(u, dx, [s](double xi) {
        const double w = 2.0 * M_PI * xi;
        return std::complex<double>(0.0, w * std::pow(std::abs(w), s - 1.0));
    });
}

SymbolApplyResult fractional_laplacian_symbol_apply(double s, std::span<const double> u,
                                                    double dx) {
    if (!(s > 0.0 && s <= 1.0))
        throw std::invalid_argument("fractional_laplacian_symbol_apply: s in (0,1]");
    return apply_symbol(u, dx, [s](double xi) {
        const double w = 2.0 * M_PI * xi;
        return std::complex<double>(std::pow(std::abs(w), 2.0 * s), 0.0);
    });
}

Eigen::MatrixXd oracle_stiffness(const Mesh1D& mesh, double s, const Coefficient& coeff,
                                 OracleGrid grid) {
    mesh.validate();
    const int n = mesh.n;
    const double h = mesh.h();
    const std::size_t N = std::size_t{1} << grid.log2n;
    const double W = grid.width_factor * mesh.length();
    const double dx = W / static_cast<double>(N);
    const double x0 = 0.5 * (mesh.a + mesh.b) - 0.5 * W;
    const auto xi = mesh.interior_nodes();

    Eigen::MatrixXd D(n, static_cast<Eigen::Index>(N));
    std::vector<double> hat(N);
    for (int i = 0; i < n; ++i) {
        for (std::size_t q = 0; q < N; ++q) {
            const double t = 1.0 - std::abs(x0 + dx * q - xi[i]) / h;
            hat[q] = t > 0.0 ? t : 0.0;
        }
        auto r = riesz_symbol_apply(s, hat, dx);
        for (std::size_t q = 0; q < N; ++q) D(i, static_cast<Eigen::Index>(q)) = r.values[q];
    }
    Eigen::VectorXd aw(static_cast<Eigen::Index>(N));
    for (std::size_t q = 0; q < N; ++q)
        aw(static_cast<Eigen::Index>(q)) = dx * coeff(x0 + dx * q);
    Eigen::MatrixXd K = D * aw.asDiagonal() * D.transpose();
    return 0.5 * (K + K.transpose());
}

}  // namespace fracstefan
