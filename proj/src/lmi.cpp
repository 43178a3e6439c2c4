#include "kse2d/lmi.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace kse2d {

namespace {
constexpr double pi = std::numbers::pi;

template <typename M>
void mirror_upper(M& a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) a(j, i) = a(i, j);
}

/// Core ⊕ border column + corner, symmetric.
Eigen::MatrixXd bordered(const Eigen::MatrixXd& core, const Eigen::VectorXd& col, double corner) {
    const int n = static_cast<int>(core.rows());
    Eigen::MatrixXd out(n + 1, n + 1);
    out.topLeftCorner(n, n) = core;
    out.topRightCorner(n, 1) = col;
    out.bottomLeftCorner(1, n) = col.transpose();
    out(n, n) = corner;
    return out;
}

double mu_of(const ContinuousAvgParams& p, const Certificate& v) {
    auto it = v.find(Var::mu);
    return it != v.end() ? it->second : p.mu;
}

} // namespace

const char* var_name(Var v) {
    switch (v) {
        case Var::p1: return "p1";
        case Var::p2: return "p2";
        case Var::r: return "r";
        case Var::gamma: return "gamma";
        case Var::eta: return "eta";
        case Var::lambda1: return "lambda1";
        case Var::lambda2: return "lambda2";
        case Var::lambda3: return "lambda3";
        case Var::beta1: return "beta1";
        case Var::beta2: return "beta2";
        case Var::beta3: return "beta3";
        case Var::mu: return "mu";
    }
    return "?";
}

double cert_get(const Certificate& c, Var v) {
    auto it = c.find(v);
    if (it == c.end())
        throw std::invalid_argument(std::string("certificate missing variable ") + var_name(v));
    return it->second;
}

namespace {
constexpr const char* k_prop1[] = {"z", "lap_z", "f_j"};
constexpr const char* k_prop2[] = {"z", "z_x1x1", "z_x2x2", "f_j"};
constexpr const char* k_thm1_eta1[] = {"z_x1", "z_x2", "z_x1x1", "z_x2x2", "biharm_z", "z", "f_j"};
constexpr const char* k_thm1_eta2[] = {"z_x1", "z_x2",   "z_x1x1", "z_x2x2",
                                       "biharm_z", "z", "f_j",    "g_j"};
constexpr const char* k_thm2_eta0[] = {"z_x1", "z_x2", "z_x1x1", "z_x2x2", "biharm_z", "z", "f_j_tk"};
constexpr const char* k_thm2_eta1[] = {"z_x1", "z_x2",   "z_x1x1", "z_x2x2",
                                       "biharm_z", "z", "f_j_tk", "rho"};
} // namespace

std::span<const char* const> basis_slots(LmiBasis b) {
    switch (b) {
        case LmiBasis::prop1: return k_prop1;
        case LmiBasis::prop2: return k_prop2;
        case LmiBasis::thm1_eta1: return k_thm1_eta1;
        case LmiBasis::thm1_eta2: return k_thm1_eta2;
        case LmiBasis::thm2_eta0: return k_thm2_eta0;
        case LmiBasis::thm2_eta1: return k_thm2_eta1;
    }
    return {};
}

void ContinuousAvgParams::validate() const {
    if (!(mu > 0)) throw std::invalid_argument("params: mu must be > 0");
    if (!(delta >= 0)) throw std::invalid_argument("params: delta must be >= 0");
    if (!(delta_bar > 0 && delta_bar <= 1))
        throw std::invalid_argument("params: delta_bar must be in (0,1]");
}

void SampledAvgParams::validate() const {
    ContinuousAvgParams::validate();
    if (!(h > 0)) throw std::invalid_argument("params: h must be > 0");
    if (!(c_bound > 0)) throw std::invalid_argument("params: C must be > 0");
}

void SampledPointParams::validate() const {
    SampledAvgParams::validate();
    if (!(delta1 > 0 && delta1 < 2 * delta))
        throw std::invalid_argument("params: need 0 < delta1 < 2*delta");
}

Eigen::MatrixXd AffineMatrixConstraint::evaluate(const Certificate& c) const {
    Eigen::MatrixXd m = F0;
    for (const auto& [v, fi] : terms) m += cert_get(c, v) * fi;
    return m;
}

Eigen::Matrix3d prop1_upsilon(const ContinuousAvgParams& p, const Certificate& v) {
    const double mu = mu_of(p, v);
    const double l1 = cert_get(v, Var::lambda1);
    const double l2 = cert_get(v, Var::lambda2);
    Eigen::Matrix3d u = Eigen::Matrix3d::Zero();
    u(0, 0) = -2 * mu + 2 * p.delta - l1 * pi * pi / 2;
    u(0, 1) = -l1 / 2 - l2 * p.delta_bar * p.delta_bar / (pi * pi) - (1 - p.kappa);
    u(0, 2) = mu;
    u(1, 1) = -2;
    u(2, 2) = -l2;
    mirror_upper(u);
    return u;
}

Prop2Blocks prop2_blocks(const ContinuousAvgParams& p, const Certificate& v) {
    const double mu = mu_of(p, v);
    const double eta = cert_get(v, Var::eta);
    const double l1 = cert_get(v, Var::lambda1);
    const double l2 = cert_get(v, Var::lambda2);
    const double b1 = cert_get(v, Var::beta1);
    const double b2 = cert_get(v, Var::beta2);
    const double b3 = cert_get(v, Var::beta3);
    const double c2 = (p.delta_bar / pi) * (p.delta_bar / pi);

    Prop2Blocks out;
    out.scalar_x1 = 2 * (1 - p.kappa) + b1 * c2 + l1 - l2;
    out.scalar_x2 = -2 * p.kappa + b2 * c2 + l1 - l2;

    Eigen::Matrix4d lam = Eigen::Matrix4d::Zero();
    lam(0, 0) = -2 * mu + 2 * p.delta - l1 * pi * pi / 2;
    lam(0, 1) = -l2 / 2;
    lam(0, 2) = -l2 / 2;
    lam(0, 3) = mu;
    lam(1, 1) = -2;
    lam(1, 2) = -2 + (b3 / 2) * c2 * c2;
    lam(2, 2) = -2;
    lam(3, 3) = -eta;
    mirror_upper(lam);
    out.lambda = lam;

    Eigen::Matrix3d wt;
    wt << b1 - eta, -eta, -eta, -eta, b2 - eta, -eta, -eta, -eta, b3 - eta;
    out.weight_test = wt;
    return out;
}

namespace {

/// Shared 7x7 core of the sampled-data quadratic forms over
/// (z_x1, z_x2, z_x1x1, z_x2x2, biharm z, z, f_j). The two theorems differ in
/// the (1,1)/(2,2) multiplier terms, the zero-identity multiplier slot, the
/// (3,4) entry and the last diagonal.
Eigen::MatrixXd sampled_core(double mu, double delta, double kappa, double z, double p1, double p2,
                             double diag12_extra, double ident_mult, double phi34) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(7, 7);
    f(0, 0) = 2 * p1 * (1 - kappa) + diag12_extra;
    f(0, 4) = -p2 * z;
    f(1, 1) = -2 * p1 * kappa + diag12_extra;
    f(2, 2) = -2 * p1 + 2 * delta * p2;
    f(2, 3) = phi34;
    f(2, 4) = -p2 * (1 - kappa);
    f(2, 5) = -ident_mult / 2;
    f(3, 3) = -2 * p1 + 2 * delta * p2;
    f(3, 4) = p2 * kappa;
    f(3, 5) = -ident_mult / 2;
    f(4, 4) = -2 * p2;
    f(4, 5) = -p2 * mu;
    f(4, 6) = p2 * mu;
    f(5, 5) = -2 * p1 * mu + 2 * delta * p1; // Wirtinger multiplier term added by caller
    f(5, 6) = p1 * mu;
    mirror_upper(f);
    return f;
}

Eigen::VectorXd schur_border(double r, double h, double mu, double kappa, double z, bool with_g) {
    Eigen::VectorXd b(with_g ? 8 : 7);
    b(0) = -r * h * z;
    b(1) = 0.0;
    b(2) = -(1 - kappa) * r * h;
    b(3) = kappa * r * h;
    b(4) = -r * h;
    b(5) = -mu * r * h;
    b(6) = mu * r * h;
    if (with_g) b(7) = mu * r * h * h;
    return b;
}

Eigen::Matrix2d sobolev_gate(double p2, double gamma) {
    Eigen::Matrix2d g;
    g << p2 - (1 + gamma) / (pi * pi), std::sqrt(0.5), std::sqrt(0.5), gamma;
    return g;
}

} // namespace

Thm1Blocks thm1_blocks(const SampledAvgParams& p, const Certificate& v, double z_vertex) {
    if (std::fabs(std::fabs(z_vertex) - p.c_bound) > 1e-12)
        throw std::invalid_argument("thm1: z_vertex must be +C or -C");
    const double p1 = cert_get(v, Var::p1), p2 = cert_get(v, Var::p2);
    const double r = cert_get(v, Var::r), gam = cert_get(v, Var::gamma);
    const double l1 = cert_get(v, Var::lambda1), l2 = cert_get(v, Var::lambda2);
    const double l3 = cert_get(v, Var::lambda3);
    const double dbar2 = p.delta_bar * p.delta_bar;

    Eigen::MatrixXd phi1 =
        sampled_core(p.mu, p.delta, p.kappa, z_vertex, p1, p2,
                     l1 + (2 * dbar2 / (pi * pi)) * l2 - l3, l3, 2 * p.delta * p2);
    phi1(5, 5) += -(pi * pi / 2) * l1;
    phi1(6, 6) = -l2;

    const Eigen::VectorXd b7 = schur_border(r, p.h, p.mu, p.kappa, z_vertex, false);
    Thm1Blocks out;
    out.xi1 = bordered(phi1, b7, -r * p.h);

    Eigen::VectorXd gcol = Eigen::VectorXd::Zero(7);
    gcol(4) = p2 * p.mu * p.h;
    gcol(5) = p1 * p.mu * p.h;
    const Eigen::MatrixXd phi2 = bordered(phi1, gcol, -r * p.h);
    const Eigen::VectorXd b8 = schur_border(r, p.h, p.mu, p.kappa, z_vertex, true);
    out.xi2 = bordered(phi2, b8, -r * p.h);

    out.sobolev_gate = sobolev_gate(p2, gam);
    return out;
}

Thm2Blocks thm2_blocks(const SampledPointParams& p, const Certificate& v, double z_vertex) {
    if (std::fabs(std::fabs(z_vertex) - p.c_bound) > 1e-12)
        throw std::invalid_argument("thm2: z_vertex must be +C or -C");
    const double p1 = cert_get(v, Var::p1), p2 = cert_get(v, Var::p2);
    const double r = cert_get(v, Var::r), gam = cert_get(v, Var::gamma);
    const double eta = cert_get(v, Var::eta);
    const double l1 = cert_get(v, Var::lambda1), l2 = cert_get(v, Var::lambda2);
    const double b1 = cert_get(v, Var::beta1), b2 = cert_get(v, Var::beta2);
    const double b3 = cert_get(v, Var::beta3);
    const double c2 = (p.delta_bar / pi) * (p.delta_bar / pi);

    Eigen::MatrixXd theta0 =
        sampled_core(p.mu, p.delta, p.kappa, z_vertex, p1, p2, l1 - l2, l2, 0.0);
    theta0(5, 5) += -(pi * pi / 2) * l1;
    theta0(6, 6) = -eta;

    Thm2Blocks out;
    out.cross_scalar = -2 * p.delta1 * p2 + b3 * c2 * c2;

    Eigen::Matrix3d tb = Eigen::Matrix3d::Zero();
    tb(0, 0) = -p.delta1 * p1;
    tb(0, 1) = -(b1 / 2) * c2;
    tb(0, 2) = -(b2 / 2) * c2;
    tb(1, 1) = -p.delta1 * p2;
    tb(2, 2) = -p.delta1 * p2;
    mirror_upper(tb);
    out.theta_bar = tb;

    const Eigen::VectorXd b7 = schur_border(r, p.h, p.mu, p.kappa, z_vertex, false);
    out.lam1 = bordered(theta0, b7, -r * p.h);

    Eigen::VectorXd gcol = Eigen::VectorXd::Zero(7);
    gcol(4) = p2 * p.mu * p.h;
    gcol(5) = p1 * p.mu * p.h;
    const Eigen::MatrixXd theta2 = bordered(theta0, gcol, -r * p.h * std::exp(-2 * p.delta * p.h));
    const Eigen::VectorXd b8 = schur_border(r, p.h, p.mu, p.kappa, z_vertex, true);
    out.lam2 = bordered(theta2, b8, -r * p.h);

    out.sobolev_gate = sobolev_gate(p2, gam);

    Eigen::Matrix3d wt;
    wt << b1 - eta, -eta, -eta, -eta, b2 - eta, -eta, -eta, -eta, b3 - eta;
    out.weight_test = wt;
    return out;
}

namespace {

using EvalFn = std::function<Eigen::MatrixXd(const Certificate&)>;

Certificate zero_cert(const std::vector<Var>& vars, const Certificate& fixed) {
    Certificate c = fixed;
    for (Var v : vars) c[v] = 0.0;
    return c;
}

AffineMatrixConstraint affine_from(std::string name, Sense sense, const std::vector<Var>& vars,
                                   const Certificate& fixed, const EvalFn& eval) {
    AffineMatrixConstraint c;
    c.name = std::move(name);
    c.sense = sense;
    const Certificate base = zero_cert(vars, fixed);
    c.F0 = eval(base);
    for (Var v : vars) {
        Certificate unit = base;
        unit[v] = 1.0;
        Eigen::MatrixXd fi = eval(unit) - c.F0;
        if (fi.cwiseAbs().maxCoeff() > 0.0) c.terms.emplace_back(v, std::move(fi));
    }
    return c;
}

Eigen::MatrixXd scalar1x1(double s) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = s;
    return m;
}

std::vector<Var> without_frozen(std::vector<Var> vars, const Certificate& frozen) {
    std::erase_if(vars, [&](Var v) { return frozen.count(v) > 0; });
    return vars;
}

void keep_free_signs(std::vector<SignConstraint>& signs, const Certificate& frozen) {
    std::erase_if(signs, [&](const SignConstraint& s) { return frozen.count(s.v) > 0; });
}

} // namespace

LmiProblem prop1_problem(const ContinuousAvgParams& p, bool mu_as_variable,
                         const Certificate& frozen) {
    p.validate();
    LmiProblem prob;
    prob.name = "prop1";
    prob.fixed = frozen;
    std::vector<Var> vars{Var::lambda1, Var::lambda2};
    if (mu_as_variable) vars.push_back(Var::mu);
    prob.vars = without_frozen(vars, frozen);
    prob.constraints.push_back(affine_from(
        "upsilon", Sense::neg_semidef, prob.vars, frozen,
        [&p](const Certificate& c) -> Eigen::MatrixXd { return prop1_upsilon(p, c); }));
    prob.signs = {{Var::lambda1, SignKind::nonnegative}, {Var::lambda2, SignKind::nonnegative}};
    if (mu_as_variable) prob.signs.push_back({Var::mu, SignKind::strict_positive});
    keep_free_signs(prob.signs, frozen);
    return prob;
}

LmiProblem prop2_problem(const ContinuousAvgParams& p, const Certificate& frozen) {
    p.validate();
    LmiProblem prob;
    prob.name = "prop2";
    prob.fixed = frozen;
    prob.vars = without_frozen(
        {Var::eta, Var::lambda1, Var::lambda2, Var::beta1, Var::beta2, Var::beta3}, frozen);
    auto with = [&p](auto pick) {
        return [&p, pick](const Certificate& c) -> Eigen::MatrixXd {
            return pick(prop2_blocks(p, c));
        };
    };
    prob.constraints.push_back(affine_from("grad_x1_gate", Sense::neg_semidef, prob.vars, frozen,
                                           with([](const Prop2Blocks& b) { return scalar1x1(b.scalar_x1); })));
    prob.constraints.push_back(affine_from("grad_x2_gate", Sense::neg_semidef, prob.vars, frozen,
                                           with([](const Prop2Blocks& b) { return scalar1x1(b.scalar_x2); })));
    prob.constraints.push_back(affine_from("lambda", Sense::neg_semidef, prob.vars, frozen,
                                           with([](const Prop2Blocks& b) -> Eigen::MatrixXd { return b.lambda; })));
    prob.constraints.push_back(affine_from("weight_test", Sense::pos_def, prob.vars, frozen,
                                           with([](const Prop2Blocks& b) -> Eigen::MatrixXd { return b.weight_test; })));
    prob.signs = {{Var::eta, SignKind::strict_positive},   {Var::lambda1, SignKind::nonnegative},
                  {Var::lambda2, SignKind::free_real},     {Var::beta1, SignKind::strict_positive},
                  {Var::beta2, SignKind::strict_positive}, {Var::beta3, SignKind::strict_positive}};
    keep_free_signs(prob.signs, frozen);
    return prob;
}

LmiProblem thm1_problem(const SampledAvgParams& p, const Certificate& frozen) {
    p.validate();
    LmiProblem prob;
    prob.name = "thm1";
    prob.fixed = frozen;
    prob.vars = without_frozen(
        {Var::r, Var::gamma, Var::p1, Var::p2, Var::lambda1, Var::lambda2, Var::lambda3}, frozen);
    for (double z : {p.c_bound, -p.c_bound}) {
        const std::string tag = z > 0 ? "_zpos" : "_zneg";
        prob.constraints.push_back(affine_from(
            "xi1" + tag, Sense::neg_semidef, prob.vars, frozen,
            [&p, z](const Certificate& c) -> Eigen::MatrixXd { return thm1_blocks(p, c, z).xi1; }));
        prob.constraints.push_back(affine_from(
            "xi2" + tag, Sense::neg_semidef, prob.vars, frozen,
            [&p, z](const Certificate& c) -> Eigen::MatrixXd { return thm1_blocks(p, c, z).xi2; }));
    }
    prob.constraints.push_back(affine_from(
        "sobolev_gate", Sense::pos_def, prob.vars, frozen,
        [&p](const Certificate& c) -> Eigen::MatrixXd {
            return thm1_blocks(p, c, p.c_bound).sobolev_gate;
        }));
    prob.signs = {{Var::r, SignKind::strict_positive},      {Var::gamma, SignKind::strict_positive},
                  {Var::p1, SignKind::strict_positive},     {Var::p2, SignKind::strict_positive},
                  {Var::lambda1, SignKind::nonnegative},    {Var::lambda2, SignKind::nonnegative},
                  {Var::lambda3, SignKind::free_real}};
    keep_free_signs(prob.signs, frozen);
    return prob;
}

LmiProblem thm2_problem(const SampledPointParams& p, bool lambda2_nonneg,
                        const Certificate& frozen) {
    p.validate();
    LmiProblem prob;
    prob.name = "thm2";
    prob.fixed = frozen;
    prob.vars = without_frozen({Var::r, Var::gamma, Var::p1, Var::p2, Var::eta, Var::lambda1,
                                Var::lambda2, Var::beta1, Var::beta2, Var::beta3},
                               frozen);
    for (double z : {p.c_bound, -p.c_bound}) {
        const std::string tag = z > 0 ? "_zpos" : "_zneg";
        prob.constraints.push_back(affine_from(
            "lam1" + tag, Sense::neg_semidef, prob.vars, frozen,
            [&p, z](const Certificate& c) -> Eigen::MatrixXd { return thm2_blocks(p, c, z).lam1; }));
        prob.constraints.push_back(affine_from(
            "lam2" + tag, Sense::neg_semidef, prob.vars, frozen,
            [&p, z](const Certificate& c) -> Eigen::MatrixXd { return thm2_blocks(p, c, z).lam2; }));
    }
    auto at_vertex = [&p](auto pick) {
        return [&p, pick](const Certificate& c) -> Eigen::MatrixXd {
            return pick(thm2_blocks(p, c, p.c_bound));
        };
    };
    prob.constraints.push_back(affine_from("cross_history_gate", Sense::neg_semidef, prob.vars, frozen,
                                           at_vertex([](const Thm2Blocks& b) { return scalar1x1(b.cross_scalar); })));
    prob.constraints.push_back(affine_from("theta_bar", Sense::neg_semidef, prob.vars, frozen,
                                           at_vertex([](const Thm2Blocks& b) -> Eigen::MatrixXd { return b.theta_bar; })));
    prob.constraints.push_back(affine_from("sobolev_gate", Sense::pos_def, prob.vars, frozen,
                                           at_vertex([](const Thm2Blocks& b) -> Eigen::MatrixXd { return b.sobolev_gate; })));
    prob.constraints.push_back(affine_from("weight_test", Sense::pos_def, prob.vars, frozen,
                                           at_vertex([](const Thm2Blocks& b) -> Eigen::MatrixXd { return b.weight_test; })));
    prob.signs = {{Var::r, SignKind::strict_positive},
                  {Var::gamma, SignKind::strict_positive},
                  {Var::p1, SignKind::strict_positive},
                  {Var::p2, SignKind::strict_positive},
                  {Var::eta, SignKind::strict_positive},
                  {Var::lambda1, SignKind::nonnegative},
                  {Var::lambda2, lambda2_nonneg ? SignKind::nonnegative : SignKind::free_real},
                  {Var::beta1, SignKind::strict_positive},
                  {Var::beta2, SignKind::strict_positive},
                  {Var::beta3, SignKind::strict_positive}};
    keep_free_signs(prob.signs, frozen);
    return prob;
}

} // namespace kse2d
