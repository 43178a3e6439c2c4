#pragma once

#include "kse2d/lmi.hpp"

namespace kse2d {

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Independent of the factorizations used inside the feasibility solver; this
/// is the oracle side of the solve/verify pair.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a);

double jacobi_max_eig(const Eigen::MatrixXd& a);
double jacobi_min_eig(const Eigen::MatrixXd& a);

struct ConstraintReport {
    std::string name;
    Sense sense = Sense::neg_semidef;
    double extreme_eig = 0; // max eig for <=0 constraints, min eig for >0
    bool pass = false;
};

struct VerifyReport {
    bool pass = false;
    double worst = 0; // largest violation-side eigenvalue over the <=0 blocks
    std::vector<ConstraintReport> rows;
};

/// Re-assembles every constraint at the certificate and checks the extreme
/// eigenvalues (tol on the semidefinite side) plus the sign constraints.
VerifyReport verify_certificate(const LmiProblem& prob, const Certificate& cert,
                                double tol = 1e-8);

} // namespace kse2d
