#pragma once

#include "kse2d/lmi.hpp"

namespace kse2d {

struct SolveOptions {
    double eps = 1e-6;     // strictness margin: "<0" solved as <= -eps*I, ">0" as >= eps*I
    double var_box = 1e6;  // |x_i| <= var_box (the LMI blocks are homogeneous in the
                           // decision variables; the box bounds the phase-1 drift)
    double tau_max = 1e12; // barrier parameter ceiling
    int max_newton = 80;   // damped Newton iterations per barrier stage
};

enum class SolveStatus { feasible, infeasible, no_convergence };
const char* status_name(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::no_convergence;
    Certificate cert;     // decision point (includes frozen variables)
    double phase1_t = 0;  // final phase-1 margin: max t with all blocks >= t*I
    bool box_active = false; // a variable ended within 1% of the box
};

/// Deterministic interior-point feasibility solve: phase-1 maximization of the
/// common slack t over all matrix blocks, sign constraints and the box, by
/// log-det barrier path following with damped Newton steps.
SolveResult solve_feasibility(const LmiProblem& prob, const SolveOptions& opt = {});

} // namespace kse2d
