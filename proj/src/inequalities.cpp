#include "kse2d/inequalities.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kse2d {

namespace {
constexpr double pi = std::numbers::pi;
}

void HalanayParams::validate() const {
    if (!(delta > 0)) throw std::invalid_argument("halanay: delta must be > 0");
    if (!(delta1 >= 0) || !(delta1 < 2 * delta))
        throw std::invalid_argument("halanay: need 0 <= delta1 < 2*delta");
    if (!(h >= 0)) throw std::invalid_argument("halanay: h must be >= 0");
}

double halanay_sigma(const HalanayParams& p) {
    p.validate();
    const auto g = [&](double s) { return s - p.delta + 0.5 * p.delta1 * std::exp(2.0 * s * p.h); };
    double lo = 0.0, hi = p.delta - 0.5 * p.delta1;
    if (g(lo) == 0.0) return lo;
    if (g(hi) == 0.0) return hi; // h = 0 or delta1 = 0 anchors, exact
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        (gm < 0.0 ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);
    if (std::fabs(g(s)) >= 1e-12) throw std::runtime_error("halanay: bisection failed");
    return s;
}

void FriedrichWeights::validate() const {
    if (!(alpha1 > 0 && alpha2 > 0 && alpha3 > 0))
        throw std::invalid_argument("friedrich: weights must be positive");
    if (std::fabs(alpha1 + alpha2 + alpha3 - 1.0) > 1e-12)
        throw std::invalid_argument("friedrich: weights must sum to 1");
}

double PointBoundWeights::test_matrix_min_eig() const {
    Eigen::Matrix3d t;
    t << beta1 - eta, -eta, -eta, -eta, beta2 - eta, -eta, -eta, -eta, beta3 - eta;
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(t).eigenvalues().minCoeff();
}

void PointBoundWeights::validate() const {
    if (!(eta > 0) || !(beta1 > 0 && beta2 > 0 && beta3 > 0))
        throw std::invalid_argument("point bound: eta and betas must be positive");
    if (test_matrix_min_eig() < -1e-12)
        throw std::invalid_argument("point bound: diag{beta} - eta*ones has a negative eigenvalue");
}

InequalityMargin check_wirtinger(const Field& f) {
    if (!f.clamped) throw std::invalid_argument("wirtinger: field must be clamped");
    const double lhs = l2_sq(f);
    const double grad = l2_sq(dx1(f)) + l2_sq(dx2(f));
    const double rhs = (2.0 / (pi * pi)) * grad; // (L1^2 + L2^2)/pi^2 with L1 = L2 = 1
    InequalityMargin r;
    r.margin = rhs - lhs;
    r.tol_quad = 10.0 * f.grid.dx() * f.grid.dx() * std::fabs(rhs);
    return r;
}

namespace {

// |grad f|^2 integrated over one subdomain box with differences local to the
// box: central inside, second-order one-sided at the box edges. Restrictions
// are not clamped fields, so the global stencil operators do not apply.
double grad_sq_on_box(const Field& f, int i0, int i1, int j0, int j1) {
    const int m = f.m();
    const double inv2dx = 0.5 * m;
    auto d_along = [&](int i, int j, bool x1) {
        const int k = x1 ? i : j, k0 = x1 ? i0 : j0, k1 = x1 ? i1 : j1;
        auto v = [&](int kk) { return x1 ? f.at(kk, j) : f.at(i, kk); };
        if (k == k0) return (-3 * v(k) + 4 * v(k + 1) - v(k + 2)) * inv2dx;
        if (k == k1) return (3 * v(k) - 4 * v(k - 1) + v(k - 2)) * inv2dx;
        return (v(k + 1) - v(k - 1)) * inv2dx;
    };
    double total = 0.0;
    for (int i = i0; i <= i1; ++i) {
        const double wi = (i == i0 || i == i1) ? 0.5 : 1.0;
        for (int j = j0; j <= j1; ++j) {
            const double wj = (j == j0 || j == j1) ? 0.5 : 1.0;
            const double g1 = d_along(i, j, true);
            const double g2 = d_along(i, j, false);
            total += wi * wj * (g1 * g1 + g2 * g2);
        }
    }
    const double dx = f.grid.dx();
    return total * dx * dx;
}

} // namespace

InequalityMargin check_poincare(const Field& f, const Partition& p, const Subdomain& s) {
    const double mean = subdomain_mean(f, p, s);
    const double scale = std::max(1.0, c0_norm(f));
    if (std::fabs(mean) > 1e-9 * scale)
        throw std::invalid_argument("poincare: restriction must have zero subdomain mean");
    const double lhs = integral_sq_on(f, p, s);
    int i0, i1, j0, j1;
    p.node_range(f.grid, s.j, i0, i1, j0, j1);
    const double L = p.delta_bar;
    const double rhs = ((L * L + L * L) / (pi * pi)) * grad_sq_on_box(f, i0, i1, j0, j1);
    InequalityMargin r;
    r.margin = rhs - lhs;
    r.tol_quad = 10.0 * f.grid.dx() * f.grid.dx() * std::fabs(rhs);
    return r;
}

InequalityMargin check_friedrich(const Field& f, const FriedrichWeights& w) {
    w.validate();
    if (!f.clamped) throw std::invalid_argument("friedrich: field must be clamped");
    const double l = 1.0;
    const double c2 = (2.0 * l / pi) * (2.0 * l / pi);
    const double rhs = c2 / w.alpha1 * l2_sq(dx1(f)) + c2 / w.alpha2 * l2_sq(dx2(f)) +
                       c2 * c2 / w.alpha3 * l2_sq(dx1x2(f));
    InequalityMargin r;
    r.margin = rhs - l2_sq(f);
    r.tol_quad = 10.0 * f.grid.dx() * f.grid.dx() * std::fabs(rhs);
    return r;
}

InequalityMargin check_point_bound(const Field& f, const PointBoundWeights& w) {
    w.validate();
    if (!f.clamped) throw std::invalid_argument("point bound: field must be clamped");
    const double l = 1.0;
    const double c2 = (2.0 * l / pi) * (2.0 * l / pi);
    const double rhs = w.beta1 * c2 * l2_sq(dx1(f)) + w.beta2 * c2 * l2_sq(dx2(f)) +
                       w.beta3 * c2 * c2 * l2_sq(dx1x2(f));
    InequalityMargin r;
    r.margin = rhs - w.eta * l2_sq(f);
    r.tol_quad = 10.0 * f.grid.dx() * f.grid.dx() * std::fabs(rhs);
    return r;
}

SobolevBound sobolev2d_bound(const Field& f, double gamma) {
    if (!(gamma > 0)) throw std::invalid_argument("sobolev2d: Gamma must be > 0");
    if (!f.clamped) throw std::invalid_argument("sobolev2d: field must be clamped");
    SobolevBound out;
    out.bound = 0.5 * (1.0 + gamma) * (l2_sq(dx1(f)) + l2_sq(dx2(f))) +
                (1.0 / gamma) * l2_sq(dx1x2(f));
    const double c0 = c0_norm(f);
    out.margin.margin = out.bound - c0 * c0;
    out.margin.tol_quad = 10.0 * f.grid.dx() * f.grid.dx() * std::fabs(out.bound);
    return out;
}

} // namespace kse2d
