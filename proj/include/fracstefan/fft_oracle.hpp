#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "fracstefan/mesh.hpp"

namespace fracstefan {

struct SymbolApplyResult {
    std::vector<double> values;
    bool aliasing_warning = false;  // support within 10% of the grid edge
};

/// Apply the Riesz-gradient Fourier symbol (i 2 pi xi)|2 pi xi|^{s-1} to
/// samples of u on a uniform grid of power-of-two length (spacing dx).
/// Serves as the independent oracle for the semi-analytic kernel evaluation
/// and the quadrature assembly. At s = 1 this is the spectral derivative.
SymbolApplyResult riesz_symbol_apply(double s, std::span<const double> u, double dx);

/// Apply the fractional Laplacian symbol |2 pi xi|^{2s}.
SymbolApplyResult fractional_laplacian_symbol_apply(double s, std::span<const double> u,
                                                    double dx);

struct OracleGrid {
    double width_factor = 64.0;  // grid width as a multiple of the domain length
    int log2n = 18;
};

/// Galerkin stiffness of the interior hats assembled from symbol-transformed
/// samples: K_ij = dx * sum_q a(x_q) (D^s phi_i)(x_q) (D^s phi_j)(x_q).
Eigen::MatrixXd oracle_stiffness(const Mesh1D& mesh, double s,
                                 const Coefficient& coeff = Coefficient(),
                                 OracleGrid grid = {});

}  // namespace fracstefan
