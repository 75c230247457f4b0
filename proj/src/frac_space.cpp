#include "fracstefan/frac_space.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace fracstefan {

double riesz_kernel_constant(double s) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("riesz_kernel_constant: s must be in (0,1)");
    return std::exp(std::lgamma(0.5 * s) - std::lgamma(0.5 * (1.0 - s))) /
           (std::sqrt(M_PI) * std::pow(2.0, 1.0 - s));
}

namespace {

inline double signed_power(double t, double e) {
    // sign(t) |t|^e, with 0^e = 0
    if (t > 0.0) return std::pow(t, e);
    if (t < 0.0) return -std::pow(-t, e);
    return 0.0;
}

}  // namespace

double riesz_gradient_pl(double s, std::span<const double> nodes,
                         std::span<const double> values, double x) {
    const double e = 1.0 - s;
    const double ks = riesz_kernel_constant(s) / e;
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const double d = (values[k + 1] - values[k]) / (nodes[k + 1] - nodes[k]);
        if (d != 0.0)
            acc += d * (signed_power(x - nodes[k], e) - signed_power(x - nodes[k + 1], e));
    }
    return ks * acc;
}

FracSpace::FracSpace(Mesh1D mesh, double s, Coefficient coeff, AssemblyOptions opts)
    : mesh_(mesh), s_(s), coeff_(std::move(coeff)), opts_(opts) {
    mesh_.validate();
    if (!(s_ > 0.0 && s_ <= 1.0))
        throw std::invalid_argument("FracSpace: s must be in (0, 1]");
    xi_ = mesh_.interior_nodes();
    ext_ = mesh_.exterior_nodes();

    // basis functions: interior hats, then per side hats plus outermost shoulder
    const int n = mesh_.n;
    const int m = mesh_.n_ext;
    const double h = mesh_.h();
    basis_.reserve(n + 2 * m);
    for (int i = 0; i < n; ++i)
        basis_.push_back({{xi_[i] - h, xi_[i], xi_[i] + h}, {0.0, 1.0, 0.0}});
    const auto offs = mesh_.exterior_offsets();
    for (int side = 0; side < 2; ++side) {
        const double sgn = side == 0 ? -1.0 : 1.0;
        const double bd = side == 0 ? mesh_.a : mesh_.b;
        for (int j = 0; j < m; ++j) {
            const double c = bd + sgn * offs[j];
            if (j == m - 1) {
                // shoulder: constant 1 beyond the collar, ramp to the next node
                const double inner = bd + sgn * offs[j - 1];
                if (side == 0)
                    basis_.push_back({{c, inner}, {1.0, 0.0}});
                else
                    basis_.push_back({{inner, c}, {0.0, 1.0}});
                continue;
            }
            // neighbors: inward is the previous exterior node (the first
            // interior node for j = 0), outward the next exterior node
            const double inward = j == 0 ? bd - sgn * h : bd + sgn * offs[j - 1];
            const double outward = bd + sgn * offs[j + 1];
            const double l = std::min(inward, outward), r = std::max(inward, outward);
            basis_.push_back({{l, c, r}, {0.0, 1.0, 0.0}});
        }
    }

    // consistent and lumped interior mass (uniform spacing, hats inside Omega)
    M_ = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        M_(i, i) = 4.0 * h / 6.0;
        if (i + 1 < n) M_(i, i + 1) = M_(i + 1, i) = h / 6.0;
    }
    ML_ = Eigen::VectorXd::Constant(n, h);

    if (s_ == 1.0)
        assemble_local_s1();
    else
        assemble_fractional();

    llt_.compute(K_II_);
    if (llt_.info() != Eigen::Success)
        throw std::runtime_error("FracSpace: stiffness Cholesky failed (K_II not SPD)");
}

void FracSpace::assemble_local_s1() {
    const int n = mesh_.n;
    const double h = mesh_.h();
    K_II_ = Eigen::MatrixXd::Zero(n, n);
    K_IE_ = Eigen::MatrixXd::Zero(n, n_exterior());
    auto amid = [&](double l, double r) { return coeff_(0.5 * (l + r)); };
    for (int i = 0; i < n; ++i) {
        const double al = amid(xi_[i] - h, xi_[i]);
        const double ar = amid(xi_[i], xi_[i] + h);
        K_II_(i, i) = (al + ar) / h;
        if (i + 1 < n) K_II_(i, i + 1) = K_II_(i + 1, i) = -ar / h;
    }
    // only the two boundary-node columns couple in the local limit
    K_IE_(0, 0) = -amid(mesh_.a, xi_[0]) / h;
    K_IE_(n - 1, mesh_.n_ext) = -amid(xi_[n - 1], mesh_.b) / h;
}

void FracSpace::build_quadrature(std::vector<double>& xq, std::vector<double>& wq) const {
    const double R = mesh_.R();
    const double Rq = opts_.quad_radius_factor * R;
    // panel boundaries: all basis nodes plus coefficient breaks in range
    std::vector<double> cuts;
    for (const auto& f : basis_)
        cuts.insert(cuts.end(), f.nodes.begin(), f.nodes.end());
    for (double c : coeff_.breaks())
        if (c > mesh_.a - Rq && c < mesh_.b + Rq) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double p, double q) { return std::abs(p - q) < 1e-14; }),
               cuts.end());
    std::vector<std::pair<double, double>> panels;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        panels.emplace_back(cuts[k], cuts[k + 1]);
    // geometric panels from the outermost node out to the quadrature radius
    for (int side = 0; side < 2; ++side) {
        double from = side == 0 ? cuts.front() : cuts.back();
        const double to = side == 0 ? mesh_.a - Rq : mesh_.b + Rq;
        double step = mesh_.R() - (std::abs(from - (side == 0 ? mesh_.a : mesh_.b)));
        step = std::max(std::abs(step), mesh_.h());
        while (side == 0 ? from > to : from < to) {
            double nxt = side == 0 ? std::max(from - step, to) : std::min(from + step, to);
            panels.emplace_back(std::min(from, nxt), std::max(from, nxt));
            from = nxt;
            step *= 1.6;
        }
    }

    // Gauss-Legendre nodes on [-1, 1]
    const int ng = opts_.gauss_points;
    std::vector<double> gx(ng), gw(ng);
    for (int i = 0; i < ng; ++i) {
        // Newton on Legendre polynomial, standard Golub-free construction
        double x = std::cos(M_PI * (i + 0.75) / (ng + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= ng; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1; p1 = p2;
            }
            const double dp = ng * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                gx[i] = x;
                gw[i] = 2.0 / ((1.0 - x * x) * dp * dp);
                break;
            }
        }
    }

    const int grade = opts_.grade;
    xq.clear(); wq.clear();
    auto emit = [&](double p, double q) {
        const double c = 0.5 * (p + q), w = 0.5 * (q - p);
        for (int i = 0; i < ng; ++i) {
            xq.push_back(c + w * gx[i]);
            wq.push_back(w * gw[i]);
        }
    };
    for (auto [p, q] : panels) {
        const double m = 0.5 * (p + q), w = m - p;
        // dyadic grading toward both panel ends (basis-node cusps)
        double prev = p;
        for (int j = 1; j <= grade; ++j) {
            const double t = p + w * std::pow(2.0, j - grade);  // j = grade => midpoint
            emit(prev, t);
            prev = t;
        }
        for (int j = grade - 1; j >= 1; --j) {
            const double t = q - w * std::pow(2.0, j - grade);
            emit(prev, t);
            prev = t;
        }
        emit(prev, q);
    }
}

void FracSpace::assemble_fractional() {
    std::vector<double> xq, wq;
    build_quadrature(xq, wq);
    const int Nb = static_cast<int>(basis_.size());
    const int Q = static_cast<int>(xq.size());
    Eigen::MatrixXd V(Nb, Q);

    int nthreads = opts_.threads > 0 ? opts_.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min(nthreads, Nb));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= Nb) return;
            const auto& f = basis_[i];
            for (int q = 0; q < Q; ++q)
                V(i, q) = riesz_gradient_pl(s_, f.nodes, f.values, xq[q]);
        }
    };
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    Eigen::VectorXd aw(Q);
    for (int q = 0; q < Q; ++q) aw(q) = wq[q] * coeff_(xq[q]);
    Eigen::MatrixXd K = V * aw.asDiagonal() * V.transpose();
    K = 0.5 * (K + K.transpose()).eval();

    const int n = mesh_.n;
    K_II_ = K.topLeftCorner(n, n);
    K_IE_ = K.topRightCorner(n, n_exterior());
    compute_tail_bounds();
    const double scale = std::max(1.0, K_II_.diagonal().maxCoeff());
    if (tail_estimate_ > opts_.tail_tol * scale) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "FracSpace: far-field tail bound %.3e exceeds tolerance %.3e "
                      "(quadrature radius too small)",
                      tail_estimate_, opts_.tail_tol * scale);
        throw std::runtime_error(msg);
    }
}

void FracSpace::compute_tail_bounds() {
    // Bounds on the neglected integral beyond the quadrature radius,
    // from |D^s f(x)| <= A1 * dist^{-1-s} for compact f (mean-zero slopes)
    // and |D^s f(x)| <= A0 * dist^{-s} for the shoulders.
    const double ks = riesz_kernel_constant(s_);
    const double Rq = opts_.quad_radius_factor * mesh_.R();
    const double x_lo = mesh_.a - Rq, x_hi = mesh_.b + Rq;
    struct Decay { double A0, A1, lo, hi; bool compact; };
    std::vector<Decay> dec;
    dec.reserve(basis_.size());
    for (const auto& f : basis_) {
        double a0 = 0.0, a1 = 0.0, net = 0.0;
        const double c = 0.5 * (f.nodes.front() + f.nodes.back());
        for (std::size_t k = 0; k + 1 < f.nodes.size(); ++k) {
            const double w = f.nodes[k + 1] - f.nodes[k];
            const double d = (f.values[k + 1] - f.values[k]) / w;
            net += d * w;
            a0 += std::abs(d) * w;
            // int over the segment of |y - c|
            const double p = f.nodes[k] - c, q = f.nodes[k + 1] - c;
            const double m1 = 0.5 * (std::abs(q) * q - std::abs(p) * p);
            a1 += std::abs(d) * std::abs(m1);
        }
        dec.push_back({ks * a0, ks * s_ * a1, f.nodes.front(), f.nodes.back(),
                       std::abs(net) < 1e-12});
    }
    const double astar = coeff_.upper();
    const int n = mesh_.n;
    const int Nb = static_cast<int>(basis_.size());
    double worst_compact = 0.0, worst_shoulder = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < Nb; ++j) {
            double t = 0.0;
            const auto& fi = dec[i];
            const auto& fj = dec[j];
            for (int side = 0; side < 2; ++side) {
                const double di = side == 0 ? fi.lo - x_lo : x_hi - fi.hi;
                const double dj = side == 0 ? fj.lo - x_lo : x_hi - fj.hi;
                if (di <= 0.0 || dj <= 0.0) continue;
                if (fi.compact && fj.compact) {
                    t += fi.A1 * fj.A1 * std::pow(di * dj, -0.5 * (1.0 + 2.0 * s_)) /
                         (1.0 + 2.0 * s_);
                } else {
                    const auto& cf = fi.compact ? fi : fj;
                    const auto& sf = fi.compact ? fj : fi;
                    const double dc = fi.compact ? di : dj;
                    const double ds = fi.compact ? dj : di;
                    t += cf.A1 * sf.A0 * std::pow(ds, -s_) * std::pow(dc, -s_) / s_;
                }
            }
            t *= astar;
            if (fj.compact)
                worst_compact = std::max(worst_compact, t);
            else
                worst_shoulder = std::max(worst_shoulder, t);
        }
    }
    tail_estimate_ = worst_compact;
    shoulder_tail_estimate_ = worst_shoulder;
}

Eigen::VectorXd FracSpace::solve_K(const Eigen::VectorXd& rhs) const {
    return llt_.solve(rhs);
}

double FracSpace::dual_norm(const Eigen::VectorXd& F) const {
    return std::sqrt(std::max(0.0, F.dot(llt_.solve(F))));
}

double FracSpace::enthalpy_dual_norm(const Eigen::VectorXd& h) const {
    return dual_norm(ML_.cwiseProduct(h));
}

double FracSpace::l2_norm(const Eigen::VectorXd& v) const {
    return std::sqrt(std::max(0.0, v.dot(M_ * v)));
}

double FracSpace::frac_gradient_basis(int i, double x) const {
    const auto& f = basis_.at(static_cast<std::size_t>(i));
    if (s_ == 1.0) {
        // classical one-sided derivative (value at kinks from the right)
        for (std::size_t k = 0; k + 1 < f.nodes.size(); ++k)
            if (x >= f.nodes[k] && x < f.nodes[k + 1])
                return (f.values[k + 1] - f.values[k]) / (f.nodes[k + 1] - f.nodes[k]);
        return 0.0;
    }
    return riesz_gradient_pl(s_, f.nodes, f.values, x);
}

double FracSpace::eval_interior(const Eigen::VectorXd& coeffs, double x) const {
    const double h = mesh_.h();
    const int n = mesh_.n;
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = 1.0 - std::abs(x - xi_[i]) / h;
        if (t > 0.0) v += coeffs(i) * t;
    }
    return v;
}

void FracSpace::dump_stiffness(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dump_stiffness: cannot open " + path);
    char line[128];
    std::snprintf(line, sizeof line, "# K s=%.17g n=%d R=%.17g\n", s_, mesh_.n, mesh_.R());
    out << line;
    for (int i = 0; i < K_II_.rows(); ++i)
        for (int j = 0; j < K_II_.cols(); ++j) {
            std::snprintf(line, sizeof line, "%d %d %.17g\n", i, j, K_II_(i, j));
            out << line;
        }
}

}  // namespace fracstefan
