#pragma once

#include "kse2d/field_ops.hpp"
#include "kse2d/grid.hpp"

namespace kse2d {

/// Halanay decay parameters: V' + 2*delta*V - delta1*sup V <= 0 over horizon h.
/// delta1 = 0 is admitted as the no-delay limit (sigma = delta).
struct HalanayParams {
    double delta = 0;
    double delta1 = 0;
    double h = 0;
    void validate() const;
};

/// Unique root sigma of sigma = delta - (delta1/2) e^{2 sigma h} in
/// [0, delta - delta1/2]; residual below 1e-12.
double halanay_sigma(const HalanayParams& p);

struct FriedrichWeights {
    double alpha1 = 1.0 / 3, alpha2 = 1.0 / 3, alpha3 = 1.0 / 3;
    void validate() const; // positive, sum to 1 within 1e-12
};

struct PointBoundWeights {
    double eta = 1, beta1 = 3, beta2 = 3, beta3 = 3;
    /// min eigenvalue of diag{beta} - eta*ones; must be >= -1e-12
    double test_matrix_min_eig() const;
    void validate() const;
};

/// Result of a discrete inequality check. The lemmas are exact in the
/// continuum; tol_quad = 10*dx^2*|bound side| absorbs the O(dx^2) operator
/// and quadrature error.
struct InequalityMargin {
    double margin = 0;   // bound side minus bounded side
    double tol_quad = 0;
    bool ok() const { return margin >= -tol_quad; }
};

/// Wirtinger on the unit square: ||f||^2 <= ((L1^2+L2^2)/pi^2)||grad f||^2, L=1.
InequalityMargin check_wirtinger(const Field& f);

/// Poincare on one subdomain for a zero-mean restriction, constant
/// (L1^2+L2^2)/pi^2 with L1=L2=delta_bar. Rejects nonzero mean.
InequalityMargin check_poincare(const Field& f, const Partition& p, const Subdomain& s);

/// Friedrich on the unit square (corner value f(0,0)=0, guaranteed for
/// clamped fields): reciprocally convex bound with weights alpha.
InequalityMargin check_friedrich(const Field& f, const FriedrichWeights& w);

/// Lemma-3 bound on the unit square: eta||f||^2 <= sum beta_i (2l/pi)^{..} terms,
/// valid for weights with diag{beta} >= eta*ones.
InequalityMargin check_point_bound(const Field& f, const PointBoundWeights& w);

struct SobolevBound {
    double bound = 0;
    InequalityMargin margin;
};

/// 2D Sobolev bound: ||f||_C0^2 <= (1+Gamma)/2 (||f_x1||^2+||f_x2||^2) + (1/Gamma)||f_x1x2||^2.
SobolevBound sobolev2d_bound(const Field& f, double gamma);

} // namespace kse2d
