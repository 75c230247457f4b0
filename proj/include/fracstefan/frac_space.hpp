#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "fracstefan/mesh.hpp"

namespace fracstefan {

/// Normalization constant of the order-s Riesz gradient of a piecewise-linear
/// function in the signed-power form (d = 1).
double riesz_kernel_constant(double s);

/// D^s u(x) for piecewise-linear u with constant extension beyond the first
/// and last node (zero-slope tails): exact semi-analytic evaluation
///   D^s u(x) = k_s * sum_k d_k [Q(x - p_k) - Q(x - q_k)],
///   Q(t) = sign(t) |t|^{1-s} / (1-s),
/// continuous in x, finite also at the nodes.
double riesz_gradient_pl(double s, std::span<const double> nodes,
                         std::span<const double> values, double x);

struct AssemblyOptions {
    double quad_radius_factor = 6.0;  // quadrature domain extends to this multiple of R
    int grade = 6;                    // dyadic subdivision levels per element half
    int gauss_points = 6;
    double tail_tol = 1e-6;           // gate on the analytic far-field bound
    int threads = 0;                  // 0 = hardware concurrency
};

/// Assembled discrete space for the anisotropic fractional operator on a 1D
/// mesh with exterior collar: interior-interior stiffness K_II, the
/// interior-exterior coupling K_IE, consistent and lumped mass, and the
/// Cholesky factorization backing the discrete H^{-s} norm.
///
/// At s = 1 the assembly dispatches to the local P1 form of int a u' v';
/// only the two boundary-node columns of K_IE are then nonzero.
class FracSpace {
public:
    FracSpace(Mesh1D mesh, double s, Coefficient coeff = Coefficient(),
              AssemblyOptions opts = {});

    const Mesh1D& mesh() const { return mesh_; }
    double s() const { return s_; }
    const Coefficient& coeff() const { return coeff_; }

    int n_interior() const { return mesh_.n; }
    int n_exterior() const { return 2 * mesh_.n_ext; }

    const Eigen::MatrixXd& K_II() const { return K_II_; }
    const Eigen::MatrixXd& K_IE() const { return K_IE_; }
    const Eigen::MatrixXd& M() const { return M_; }
    const Eigen::VectorXd& M_lumped() const { return ML_; }

    /// Solve K_II x = rhs through the cached Cholesky factorization.
    Eigen::VectorXd solve_K(const Eigen::VectorXd& rhs) const;

    /// Discrete H^{-s} norm of a dual (load) vector: sqrt(F^T K_II^{-1} F).
    double dual_norm(const Eigen::VectorXd& F) const;

    /// Discrete H^{-s} norm of an L2 function given by interior nodal values:
    /// the W-norm with W = M_L K_II^{-1} M_L.
    double enthalpy_dual_norm(const Eigen::VectorXd& h) const;

    /// L2(Omega) norm of interior nodal values (consistent mass).
    double l2_norm(const Eigen::VectorXd& v) const;

    /// D^s of the i-th basis function (0..n-1 interior hats, then exterior).
    double frac_gradient_basis(int i, double x) const;

    /// Pointwise value of the discrete function with the given interior
    /// coefficients (zero extension outside Omega).
    double eval_interior(const Eigen::VectorXd& coeffs, double x) const;

    /// Max analytic far-field bound over assembled compact-support pairs.
    double tail_estimate() const { return tail_estimate_; }
    /// Far-field bound for the shoulder columns (data-truncation scale,
    /// reported but not gating).
    double shoulder_tail_estimate() const { return shoulder_tail_estimate_; }

    const std::vector<double>& interior_nodes() const { return xi_; }
    const std::vector<double>& exterior_node_coords() const { return ext_; }

    /// Plain-text coordinate dump of K_II with the oracle-check header.
    void dump_stiffness(const std::string& path) const;

private:
    struct BasisFn {
        std::vector<double> nodes, values;  // zero-slope extensions
    };

    void assemble_local_s1();
    void assemble_fractional();
    void build_quadrature(std::vector<double>& xq, std::vector<double>& wq) const;
    void compute_tail_bounds();

    Mesh1D mesh_;
    double s_;
    Coefficient coeff_;
    AssemblyOptions opts_;
    std::vector<double> xi_;   // interior node coords
    std::vector<double> ext_;  // exterior node coords (left out, then right out)
    std::vector<BasisFn> basis_;  // interior first, then exterior
    Eigen::MatrixXd K_II_, K_IE_, M_;
    Eigen::VectorXd ML_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double tail_estimate_ = 0.0;
    double shoulder_tail_estimate_ = 0.0;
};

}  // namespace fracstefan
