#pragma once

#include "kse2d/sdp.hpp"

namespace kse2d {

enum class TheoremKind { thm1, thm2 };

struct MaxHResult {
    double h_star = 0;                         // largest tested feasible h
    Certificate cert_at_h_star;                // certificate from the h_star solve
    std::vector<std::pair<double, bool>> scan; // (h, feasible) at resolution tol
    std::vector<double> anomalies;             // scan points violating monotone feasibility
};

/// Bisection for the maximal feasible sampling period, assuming feasibility is
/// monotone in h. Requires feasible(h_lo) and infeasible(h_hi) (checked first).
/// A linear scan at resolution tol over [h_lo, h_hi] audits the monotonicity
/// assumption; violations are reported, not silently absorbed.
MaxHResult max_h(TheoremKind kind, const SampledPointParams& base, double h_lo, double h_hi,
                 double tol, const SolveOptions& opt = {}, bool lambda2_nonneg = false);

} // namespace kse2d
