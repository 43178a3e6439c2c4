#include "kse2d/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <vector>

namespace kse2d {

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::feasible: return "feasible";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::no_convergence: return "no_convergence";
    }
    return "?";
}

namespace {

// One barrier block S(x) = B + sum_i x_i G_i, required S(x) - t I > 0.
struct Block {
    Eigen::MatrixXd B;
    std::vector<Eigen::MatrixXd> G; // indexed by decision variable
};

struct Phase1 {
    std::vector<Block> blocks;
    int nv = 0;
    int total_dim = 0;

    // Barrier value f = -tau*t - sum log det(M_a); returns false if some M_a
    // is not positive definite.
    bool value(const Eigen::VectorXd& x, double t, double tau, double& f) const {
        f = -tau * t;
        Eigen::MatrixXd M;
        for (const auto& b : blocks) {
            M = b.B;
            for (int i = 0; i < nv; ++i)
                if (b.G[i].size() > 0) M += x[i] * b.G[i];
            M.diagonal().array() -= t;
            Eigen::LLT<Eigen::MatrixXd> llt(M);
            if (llt.info() != Eigen::Success) return false;
            f -= 2.0 * llt.matrixLLT().diagonal().array().log().sum();
        }
        return true;
    }

    // Gradient and Hessian of the barrier at (x,t); y-layout: (x_0..x_{nv-1}, t).
    bool derivatives(const Eigen::VectorXd& x, double t, double tau, Eigen::VectorXd& g,
                     Eigen::MatrixXd& H) const {
        const int n = nv + 1;
        g = Eigen::VectorXd::Zero(n);
        H = Eigen::MatrixXd::Zero(n, n);
        g[nv] = -tau;
        Eigen::MatrixXd M, Minv;
        std::vector<Eigen::MatrixXd> P(static_cast<size_t>(nv));
        for (const auto& b : blocks) {
            const int d = static_cast<int>(b.B.rows());
            M = b.B;
            for (int i = 0; i < nv; ++i)
                if (b.G[i].size() > 0) M += x[i] * b.G[i];
            M.diagonal().array() -= t;
            Eigen::LLT<Eigen::MatrixXd> llt(M);
            if (llt.info() != Eigen::Success) return false;
            Minv = llt.solve(Eigen::MatrixXd::Identity(d, d));
            for (int i = 0; i < nv; ++i)
                P[static_cast<size_t>(i)] =
                    b.G[i].size() > 0 ? Eigen::MatrixXd(Minv * b.G[i]) : Eigen::MatrixXd();
            for (int i = 0; i < nv; ++i) {
                if (P[static_cast<size_t>(i)].size() == 0) continue;
                g[i] -= P[static_cast<size_t>(i)].trace();
                for (int j = i; j < nv; ++j) {
                    if (P[static_cast<size_t>(j)].size() == 0) continue;
                    const double hij =
                        (P[static_cast<size_t>(i)].array() *
                         P[static_cast<size_t>(j)].transpose().array()).sum();
                    H(i, j) += hij;
                    if (j != i) H(j, i) += hij;
                }
                const double hit = -(P[static_cast<size_t>(i)].array() * Minv.transpose().array()).sum();
                H(i, nv) += hit;
                H(nv, i) += hit;
            }
            g[nv] += Minv.trace();
            H(nv, nv) += (Minv.array() * Minv.transpose().array()).sum();
        }
        return true;
    }
};

} // namespace

SolveResult solve_feasibility(const LmiProblem& prob, const SolveOptions& opt) {
    const int nv = static_cast<int>(prob.vars.size());
    Phase1 ph;
    ph.nv = nv;

    auto var_index = [&](Var v) -> int {
        for (int i = 0; i < nv; ++i)
            if (prob.vars[static_cast<size_t>(i)] == v) return i;
        return -1;
    };

    for (const auto& c : prob.constraints) {
        Block b;
        const double sgn = (c.sense == Sense::neg_semidef) ? -1.0 : 1.0;
        b.B = sgn * c.F0;
        b.B.diagonal().array() -= opt.eps;
        b.G.assign(static_cast<size_t>(nv), Eigen::MatrixXd());
        for (const auto& [v, fi] : c.terms) {
            const int i = var_index(v);
            if (i >= 0) b.G[static_cast<size_t>(i)] = sgn * fi;
        }
        ph.total_dim += c.dim();
        ph.blocks.push_back(std::move(b));
    }
    auto scalar_block = [&](int i, double base, double coeff) {
        Block b;
        b.B = Eigen::MatrixXd::Constant(1, 1, base);
        b.G.assign(static_cast<size_t>(nv), Eigen::MatrixXd());
        b.G[static_cast<size_t>(i)] = Eigen::MatrixXd::Constant(1, 1, coeff);
        ph.total_dim += 1;
        ph.blocks.push_back(std::move(b));
    };
    for (const auto& s : prob.signs) {
        const int i = var_index(s.v);
        if (i < 0) continue;
        if (s.kind == SignKind::strict_positive) scalar_block(i, -opt.eps, 1.0);
        else if (s.kind == SignKind::nonnegative) scalar_block(i, 0.0, 1.0);
    }
    for (int i = 0; i < nv; ++i) {
        scalar_block(i, opt.var_box, -1.0);
        scalar_block(i, opt.var_box, 1.0);
    }

    // interior start
    Eigen::VectorXd x = Eigen::VectorXd::Zero(nv);
    for (const auto& s : prob.signs) {
        const int i = var_index(s.v);
        if (i >= 0 && s.kind != SignKind::free_real) x[i] = 1.0;
    }
    double t = std::numeric_limits<double>::infinity();
    {
        Eigen::MatrixXd M;
        for (const auto& b : ph.blocks) {
            M = b.B;
            for (int i = 0; i < nv; ++i)
                if (b.G[i].size() > 0) M += x[i] * b.G[i];
            const double lmin =
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M).eigenvalues().minCoeff();
            t = std::min(t, lmin);
        }
        t -= 1.0;
    }

    SolveResult res;
    bool converged_ok = true;
    Eigen::VectorXd g;
    Eigen::MatrixXd H;
    for (double tau = 1.0; tau <= opt.tau_max; tau *= 10.0) {
        for (int it = 0; it < opt.max_newton; ++it) {
            if (!ph.derivatives(x, t, tau, g, H)) {
                converged_ok = false;
                break;
            }
            Eigen::VectorXd d;
            double ridge = 0.0;
            for (int attempt = 0; attempt < 6; ++attempt) {
                Eigen::MatrixXd Hr = H;
                if (ridge > 0) Hr.diagonal().array() += ridge;
                Eigen::LDLT<Eigen::MatrixXd> ldlt(Hr);
                d = ldlt.solve(-g);
                if (ldlt.info() == Eigen::Success && d.allFinite() && g.dot(d) < 0) break;
                ridge = (ridge == 0) ? 1e-10 * (1.0 + H.diagonal().maxCoeff()) : ridge * 100;
            }
            if (!d.allFinite() || g.dot(d) >= 0) break;
            const double decrement = -g.dot(d);
            double f0;
            if (!ph.value(x, t, tau, f0)) {
                converged_ok = false;
                break;
            }
            double alpha = 1.0;
            bool stepped = false;
            while (alpha > 1e-14) {
                const Eigen::VectorXd xn = x + alpha * d.head(nv);
                const double tn = t + alpha * d[nv];
                double fn;
                if (ph.value(xn, tn, tau, fn) && fn <= f0 - 0.25 * alpha * decrement) {
                    x = xn;
                    t = tn;
                    stepped = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!stepped || decrement < 1e-9) break;
        }
        if (!converged_ok) break;
        if (t > 1e-7) break;                                  // strictly feasible already
        if (t + ph.total_dim / tau < 0 && tau >= 1e4) break;  // certified infeasible
    }

    res.phase1_t = t;
    res.cert = prob.fixed;
    for (int i = 0; i < nv; ++i) res.cert[prob.vars[static_cast<size_t>(i)]] = x[i];
    for (int i = 0; i < nv; ++i)
        if (std::fabs(x[i]) > 0.99 * opt.var_box) res.box_active = true;
    if (!converged_ok && t <= 0) {
        res.status = SolveStatus::no_convergence;
    } else {
        res.status = (t > 0) ? SolveStatus::feasible : SolveStatus::infeasible;
    }
    return res;
}

} // namespace kse2d
