#include "kse2d/max_h.hpp"

#include <cmath>
#include <stdexcept>

namespace kse2d {

MaxHResult max_h(TheoremKind kind, const SampledPointParams& base, double h_lo, double h_hi,
                 double tol, const SolveOptions& opt, bool lambda2_nonneg) {
    if (!(tol > 0) || !(h_hi > h_lo)) throw std::invalid_argument("max_h: bad bracket/tol");

    auto solve_at = [&](double h) -> SolveResult {
        if (kind == TheoremKind::thm1) {
            SampledAvgParams p = base;
            p.h = h;
            return solve_feasibility(thm1_problem(p), opt);
        }
        SampledPointParams p = base;
        p.h = h;
        return solve_feasibility(thm2_problem(p, lambda2_nonneg), opt);
    };
    auto feasible = [&](double h, Certificate* cert = nullptr) {
        const SolveResult r = solve_at(h);
        if (cert && r.status == SolveStatus::feasible) *cert = r.cert;
        return r.status == SolveStatus::feasible;
    };

    MaxHResult out;
    Certificate best;
    if (!feasible(h_lo, &best)) throw std::runtime_error("max_h: h_lo is not feasible");
    if (feasible(h_hi)) throw std::runtime_error("max_h: h_hi is not infeasible");
    double lo = h_lo, hi = h_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        Certificate c;
        if (feasible(mid, &c)) {
            lo = mid;
            best = c;
        } else {
            hi = mid;
        }
    }
    out.h_star = lo;
    out.cert_at_h_star = best;

    const int n = static_cast<int>(std::floor((h_hi - h_lo) / tol + 1e-9));
    for (int k = 0; k <= n; ++k) {
        const double h = h_lo + k * tol;
        out.scan.emplace_back(h, feasible(h));
    }
    for (const auto& [h, feas] : out.scan) {
        if (feas && h > out.h_star + 0.5 * tol) out.anomalies.push_back(h);
        if (!feas && h < out.h_star - 0.5 * tol) out.anomalies.push_back(h);
    }
    return out;
}

} // namespace kse2d
