#include "kse2d/verify.hpp"

#include <algorithm>
#include <cmath>

namespace kse2d {

std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
    const int n = static_cast<int>(a.rows());
    if (n == 1) return {a(0, 0)};
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30 * scale * scale) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double sgn = theta >= 0 ? 1.0 : -1.0;
                const double tt = sgn / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                const double s = tt * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double jacobi_max_eig(const Eigen::MatrixXd& a) { return jacobi_eigenvalues(a).back(); }
double jacobi_min_eig(const Eigen::MatrixXd& a) { return jacobi_eigenvalues(a).front(); }

VerifyReport verify_certificate(const LmiProblem& prob, const Certificate& cert, double tol) {
    Certificate full = cert;
    for (const auto& [v, val] : prob.fixed) full.emplace(v, val);

    VerifyReport rep;
    rep.pass = true;
    rep.worst = -std::numeric_limits<double>::infinity();
    for (const auto& c : prob.constraints) {
        const Eigen::MatrixXd m = c.evaluate(full);
        ConstraintReport row;
        row.name = c.name;
        row.sense = c.sense;
        if (c.sense == Sense::neg_semidef) {
            row.extreme_eig = jacobi_max_eig(m);
            row.pass = row.extreme_eig <= tol;
            rep.worst = std::max(rep.worst, row.extreme_eig);
        } else {
            row.extreme_eig = jacobi_min_eig(m);
            row.pass = row.extreme_eig >= -tol;
        }
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(std::move(row));
    }
    for (const auto& s : prob.signs) {
        const auto it = full.find(s.v);
        if (it == full.end()) continue;
        ConstraintReport row;
        row.name = std::string("sign:") + var_name(s.v);
        row.sense = Sense::pos_def;
        row.extreme_eig = it->second;
        row.pass = (s.kind == SignKind::strict_positive) ? (it->second > 0)
                   : (s.kind == SignKind::nonnegative)   ? (it->second >= -1e-12)
                                                         : true;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace kse2d
