#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace kse2d {

/// Decision-variable identifiers across all certification problems.
enum class Var : int {
    p1,
    p2,
    r,
    gamma,
    eta,
    lambda1,
    lambda2,
    lambda3,
    beta1,
    beta2,
    beta3,
    mu,
};
const char* var_name(Var v);

/// Decision point: variable-id -> value.
using Certificate = std::map<Var, double>;

double cert_get(const Certificate& c, Var v); // throws if missing

/// Named slots of the quadratic-form variable vectors used by each LMI.
/// f_j, g_j and rho are analysis-only quantities (measurement residual,
/// averaged state increment, time-averaged z_t); they live here as documented
/// basis slots, not simulated state.
enum class LmiBasis { prop1, prop2, thm1_eta1, thm1_eta2, thm2_eta0, thm2_eta1 };
std::span<const char* const> basis_slots(LmiBasis b);

struct ContinuousAvgParams {
    double mu = 0.95;       // controller gain
    double delta = 0.0;     // decay rate
    double kappa = -0.5;    // substrate angle
    double delta_bar = 0.25;
    void validate() const;
};

struct SampledAvgParams : ContinuousAvgParams {
    double h = 0.35;     // sampling bound
    double c_bound = 2.0; // state bound C
    void validate() const;
};

struct SampledPointParams : SampledAvgParams {
    double delta1 = 0.15; // Halanay cross term, 0 < delta1 < 2*delta
    void validate() const;
};

enum class Sense { neg_semidef, pos_def };

/// One matrix constraint F0 + sum_i x_i F_i, negative semidefinite or
/// positive definite (strictness realized as an eps margin when solving).
struct AffineMatrixConstraint {
    std::string name;
    Sense sense = Sense::neg_semidef;
    Eigen::MatrixXd F0;
    std::vector<std::pair<Var, Eigen::MatrixXd>> terms;

    int dim() const { return static_cast<int>(F0.rows()); }
    Eigen::MatrixXd evaluate(const Certificate& c) const;
};

enum class SignKind { strict_positive, nonnegative, free_real };
struct SignConstraint {
    Var v;
    SignKind kind;
};

struct LmiProblem {
    std::string name;
    std::vector<Var> vars;
    std::vector<AffineMatrixConstraint> constraints;
    std::vector<SignConstraint> signs;
    Certificate fixed; // frozen variables, absorbed into the F0 parts
};

// Matrix assembly, entry-for-entry from the theorem statements. All matrices
// are affine in the decision variables once the state vertex z is fixed.

/// Proposition 1 (continuous averaged): 3x3 Upsilon over (z, Lap z, f_j).
/// mu comes from the certificate when present (decision-variable mode),
/// otherwise from params.
Eigen::Matrix3d prop1_upsilon(const ContinuousAvgParams& p, const Certificate& v);

/// Proposition 2 (continuous point): two scalar constraints, the 4x4 Lambda
/// over (z, z_x1x1, z_x2x2, f_j), and the 3x3 weight test matrix.
struct Prop2Blocks {
    double scalar_x1; // gates the z_x1 quadratic term: 2(1-kappa) + beta1 (dbar/pi)^2 + lambda1 - lambda2 <= 0
    double scalar_x2; // gates the z_x2 quadratic term
    Eigen::Matrix4d lambda;
    Eigen::Matrix3d weight_test; // diag{beta} - eta * ones >= 0
};
Prop2Blocks prop2_blocks(const ContinuousAvgParams& p, const Certificate& v);

/// Theorem 1 (sampled averaged) at one state vertex z in {+C, -C}.
struct Thm1Blocks {
    Eigen::MatrixXd xi1; // 8x8
    Eigen::MatrixXd xi2; // 9x9
    Eigen::Matrix2d sobolev_gate; // [[p2-(1+Gamma)/pi^2, sqrt(1/2)],[., Gamma]] > 0
};
Thm1Blocks thm1_blocks(const SampledAvgParams& p, const Certificate& v, double z_vertex);

/// Theorem 2 (sampled point) at one state vertex.
struct Thm2Blocks {
    double cross_scalar; // sampled cross-derivative gate: -2 delta1 p2 + beta3 (dbar/pi)^4 <= 0
    Eigen::Matrix3d theta_bar;
    Eigen::Matrix2d sobolev_gate;
    Eigen::MatrixXd lam1; // 8x8
    Eigen::MatrixXd lam2; // 9x9
    Eigen::Matrix3d weight_test;
};
Thm2Blocks thm2_blocks(const SampledPointParams& p, const Certificate& v, double z_vertex);

// Feasibility problem builders. `frozen` entries are held at the given values
// and removed from the decision variables.

LmiProblem prop1_problem(const ContinuousAvgParams& p, bool mu_as_variable = false,
                         const Certificate& frozen = {});
LmiProblem prop2_problem(const ContinuousAvgParams& p, const Certificate& frozen = {});
LmiProblem thm1_problem(const SampledAvgParams& p, const Certificate& frozen = {});
LmiProblem thm2_problem(const SampledPointParams& p, bool lambda2_nonneg = false,
                        const Certificate& frozen = {});

} // namespace kse2d
