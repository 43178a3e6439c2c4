#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kse2d/inequalities.hpp"
#include "kse2d/max_h.hpp"
#include "kse2d/random_fields.hpp"
#include "kse2d/sdp.hpp"
#include "kse2d/sim.hpp"
#include "kse2d/sim_config.hpp"
#include "kse2d/verify.hpp"

using namespace kse2d;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitError = 2;

double cert_or_zero(const Certificate& c, Var v) {
    const auto it = c.find(v);
    return it == c.end() ? 0.0 : it->second;
}

void print_cert_csv(const char* status, double h, const Certificate& c, double worst) {
    std::printf("status,h,p1,p2,r,gamma,eta,lambda1,lambda2,lambda3,beta1,beta2,beta3,max_eig_worst\n");
    std::printf("%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                status, h, cert_or_zero(c, Var::p1), cert_or_zero(c, Var::p2),
                cert_or_zero(c, Var::r), cert_or_zero(c, Var::gamma), cert_or_zero(c, Var::eta),
                cert_or_zero(c, Var::lambda1), cert_or_zero(c, Var::lambda2),
                cert_or_zero(c, Var::lambda3), cert_or_zero(c, Var::beta1),
                cert_or_zero(c, Var::beta2), cert_or_zero(c, Var::beta3), worst);
}

std::string output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("KSE2D_OUT_DIR")) return env;
    return ".";
}

std::string format_time(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

int run_lmi(const std::string& which, const SampledPointParams& sp, double eps, bool solve_mu,
            bool lambda2_nonneg) {
    SolveOptions opt;
    opt.eps = eps;
    LmiProblem prob;
    double h_col = 0.0;
    if (which == "prop1") {
        prob = prop1_problem(static_cast<const ContinuousAvgParams&>(sp), solve_mu);
    } else if (which == "prop2") {
        prob = prop2_problem(static_cast<const ContinuousAvgParams&>(sp));
    } else if (which == "thm1") {
        prob = thm1_problem(static_cast<const SampledAvgParams&>(sp));
        h_col = sp.h;
    } else {
        prob = thm2_problem(sp, lambda2_nonneg);
        h_col = sp.h;
    }
    const SolveResult res = solve_feasibility(prob, opt);
    if (res.status == SolveStatus::feasible) {
        const VerifyReport rep = verify_certificate(prob, res.cert);
        std::printf("%s: feasible (phase-1 margin %.3e, verifier %s, worst max-eig %.3e)\n",
                    which.c_str(), res.phase1_t, rep.pass ? "pass" : "FAIL", rep.worst);
        if (solve_mu && res.cert.count(Var::mu))
            std::printf("gain mu = %.12g\n", res.cert.at(Var::mu));
        print_cert_csv(rep.pass ? "feasible" : "feasible_unverified", h_col, res.cert, rep.worst);
        return rep.pass ? kExitOk : kExitError;
    }
    std::printf("%s: %s\n", which.c_str(), status_name(res.status));
    print_cert_csv(status_name(res.status), h_col, {}, 0.0);
    return res.status == SolveStatus::infeasible ? kExitInfeasible : kExitError;
}

int run_max_h(const std::string& problem, const SampledPointParams& base, double h_lo, double h_hi,
              double tol, double eps) {
    SolveOptions opt;
    opt.eps = eps;
    const TheoremKind kind = (problem == "thm1") ? TheoremKind::thm1 : TheoremKind::thm2;
    const MaxHResult res = max_h(kind, base, h_lo, h_hi, tol, opt);
    std::printf("%s: max feasible h = %.12g (bisection tol %.3g over [%.3g, %.3g])\n",
                problem.c_str(), res.h_star, tol, h_lo, h_hi);
    if (!res.anomalies.empty()) {
        std::printf("WARNING: non-monotone feasibility detected at:");
        for (double h : res.anomalies) std::printf(" %.6g", h);
        std::printf("\n");
    }
    SampledPointParams at = base;
    at.h = res.h_star;
    const LmiProblem prob = (kind == TheoremKind::thm1)
                                ? thm1_problem(static_cast<const SampledAvgParams&>(at))
                                : thm2_problem(at);
    const VerifyReport rep = verify_certificate(prob, res.cert_at_h_star);
    std::printf("certificate at h*: verifier %s, worst max-eig %.3e\n",
                rep.pass ? "pass" : "FAIL", rep.worst);
    print_cert_csv(rep.pass ? "feasible" : "feasible_unverified", res.h_star, res.cert_at_h_star,
                   rep.worst);
    return rep.pass ? kExitOk : kExitError;
}

int run_simulate(const std::string& config_path, const std::string& out_flag) {
    const SimConfig cfg = load_sim_config(config_path);
    const std::string dir = output_dir(out_flag);
    std::filesystem::create_directories(dir);
    MonitorSeries series = run(cfg, [&](double t, const Field& f) {
        write_field_csv(f, dir + "/snapshot_t" + format_time(t) + ".csv");
    });
    std::ofstream os(dir + "/monitor.csv");
    if (!os) throw std::runtime_error("cannot open " + dir + "/monitor.csv");
    series.write_csv(os);
    std::printf("wrote %s/monitor.csv (%zu rows%s)\n", dir.c_str(), series.rows.size(),
                series.blowup ? ", blowup" : "");
    return series.blowup ? kExitInfeasible : kExitOk;
}

int run_verify_lemmas(std::uint64_t seed, int count) {
    Grid2D g(64);
    Partition part = Partition::uniform(4);
    ClampedFieldGenerator gen(seed);
    double min_wirt = 1e300, min_poin = 1e300, min_fried = 1e300, min_point = 1e300,
           min_sob = 1e300;
    bool all_ok = true;
    const FriedrichWeights fw[3] = {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.8, 0.1, 0.1}, {0.1, 0.8, 0.1}};
    const PointBoundWeights pw[2] = {{1, 3, 3, 3}, {0.5, 2, 2, 2}};
    for (int k = 0; k < count; ++k) {
        const Field f = gen.next(g);
        auto fold = [&](const InequalityMargin& m, double& mn) {
            mn = std::min(mn, m.margin);
            all_ok = all_ok && m.ok();
        };
        fold(check_wirtinger(f), min_wirt);
        for (const auto& s : part.subdomains)
            fold(check_poincare(residual_f_j(f, part, s, MeasurementMode::averaged), part, s),
                 min_poin);
        for (const auto& w : fw) fold(check_friedrich(f, w), min_fried);
        for (const auto& w : pw) fold(check_point_bound(f, w), min_point);
        for (double gamma : {0.1, 1.0, 10.0}) fold(sobolev2d_bound(f, gamma).margin, min_sob);
    }
    bool rejected = false;
    try {
        (void)check_point_bound(Field(g), PointBoundWeights{1, 1, 1, 1});
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    std::printf("lemma property run: seed %llu, count %d, grid m=64\n",
                static_cast<unsigned long long>(seed), count);
    std::printf("min margin wirtinger    %.12g\n", min_wirt);
    std::printf("min margin poincare     %.12g\n", min_poin);
    std::printf("min margin friedrich    %.12g\n", min_fried);
    std::printf("min margin point-bound  %.12g\n", min_point);
    std::printf("min margin sobolev2d    %.12g\n", min_sob);
    std::printf("invalid lemma-3 weights rejected: %s\n", rejected ? "yes" : "NO");
    std::printf("result: %s\n", (all_ok && rejected) ? "ok" : "FAIL");
    return (all_ok && rejected) ? kExitOk : kExitInfeasible;
}

int run_reproduce(bool quick, double delta_override, const std::string& out_flag) {
    const std::string dir = output_dir(out_flag);
    std::filesystem::create_directories(dir);
    struct Stage {
        std::string name, detail;
        bool pass;
    };
    std::vector<Stage> stages;

    SampledPointParams base;
    base.mu = 0.95;
    base.delta = delta_override;
    base.kappa = -0.5;
    base.delta_bar = 0.25;
    base.c_bound = 2.0;
    base.h = 0.35;
    base.delta1 = 0.15;

    // stage 1: theorem 1 maximal h
    try {
        const MaxHResult m1 = max_h(TheoremKind::thm1, base, 0.05, 0.50, 0.01);
        char d[128];
        std::snprintf(d, sizeof d, "h* = %.4g, expected in [0.37, 0.41]", m1.h_star);
        stages.push_back({"thm1 max-h", d, m1.h_star >= 0.37 && m1.h_star <= 0.41});
    } catch (const std::exception& e) {
        stages.push_back({"thm1 max-h", e.what(), false});
    }
    // stage 2: theorem 2 maximal h
    SampledPointParams base2 = base;
    base2.delta = 0.2;
    const MaxHResult m2 = max_h(TheoremKind::thm2, base2, 0.05, 0.50, 0.01);
    {
        char d[128];
        std::snprintf(d, sizeof d, "h* = %.4g, expected in [0.35, 0.39]", m2.h_star);
        stages.push_back({"thm2 max-h", d, m2.h_star >= 0.35 && m2.h_star <= 0.39});
    }
    // stage 3: closed-loop decay at h = 0.35
    SimConfig cfg;
    cfg.m = quick ? 32 : 64;
    cfg.dt = 2.5e-4;
    cfg.T = 14.0;
    cfg.h = 0.35;
    cfg.mu = 0.95;
    cfg.kappa = -0.5;
    cfg.delta_bar = 0.25;
    cfg.ic_amplitude = 0.236;
    cfg.output_stride = 200;
    cfg.snapshot_times = {0.0, 1.4, 14.0};
    cfg.monitor.p1 = 80.6354;
    cfg.monitor.p2 = 5.145;
    cfg.monitor.delta = 0.1;
    {
        SampledPointParams mon = base;
        mon.delta = 0.1;
        const SolveResult r35 = solve_feasibility(thm1_problem(mon));
        cfg.monitor.r = (r35.status == SolveStatus::feasible) ? r35.cert.at(Var::r) : 1.0;
    }
    MonitorSeries s3 = run(cfg, [&](double t, const Field& f) {
        write_field_csv(f, dir + "/snapshot_t" + format_time(t) + ".csv");
    });
    {
        std::ofstream os(dir + "/monitor.csv");
        s3.write_csv(os);
    }
    {
        double v1_0 = s3.rows.front().V1, v1_10 = -1, c0_0 = s3.rows.front().c0, c0_14 = -1;
        for (const auto& row : s3.rows) {
            if (std::fabs(row.t - 10.0) <= cfg.dt) v1_10 = row.V1;
            if (std::fabs(row.t - 14.0) <= cfg.dt) c0_14 = row.c0;
        }
        const bool decay = v1_10 >= 0 && v1_10 <= std::exp(-2.0) * 1.2 * v1_0;
        const bool snap = c0_14 >= 0 && c0_14 <= 1e-2 * c0_0;
        char d[160];
        std::snprintf(d, sizeof d, "V1(10)/V1(0) = %.3e (<= %.3e), c0(14)/c0(0) = %.3e (<= 1e-2)",
                      v1_10 / v1_0, std::exp(-2.0) * 1.2, c0_14 / c0_0);
        stages.push_back({"h=0.35 decay", d, !s3.blowup && decay && snap});
    }
    // stage 4: the empirically robust large sampling period
    cfg.h = 2.0;
    cfg.T = 10.0;
    cfg.snapshot_times.clear();
    MonitorSeries s4 = run(cfg);
    {
        const double v0 = s4.rows.front().V;
        const double vT = s4.rows.back().V;
        char d[128];
        std::snprintf(d, sizeof d, "blowup=%d, V(10)/V(0) = %.3e (decaying, bounded)",
                      s4.blowup ? 1 : 0, vT / v0);
        stages.push_back({"h=2.0 robustness", d, !s4.blowup && vT <= 0.01 * v0});
    }

    bool all = true;
    std::printf("\n%-18s %-8s %s\n", "stage", "result", "detail");
    for (const auto& st : stages) {
        std::printf("%-18s %-8s %s\n", st.name.c_str(), st.pass ? "PASS" : "FAIL",
                    st.detail.c_str());
        all = all && st.pass;
    }
    if (!all)
        for (const auto& st : stages)
            if (!st.pass) std::printf("failing stage: %s\n", st.name.c_str());
    return all ? kExitOk : kExitInfeasible;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certification and simulation toolkit for sampled-data distributed control "
                 "of the 2D Kuramoto-Sivashinsky equation"};
    app.require_subcommand(1);

    // halanay
    auto* halanay = app.add_subcommand("halanay", "solve the Halanay decay rate equation");
    halanay->set_help_flag("--help", "print help");
    HalanayParams hp;
    halanay->add_option("--delta", hp.delta)->required();
    halanay->add_option("--delta1", hp.delta1)->required();
    halanay->add_option("--h", hp.h)->required();

    // lmi <which>
    auto* lmi = app.add_subcommand("lmi", "assemble and solve the certification LMIs");
    lmi->require_subcommand(1);
    SampledPointParams sp;
    sp.delta = 0.1;
    sp.delta1 = 0.05;
    double eps = 1e-6;
    bool solve_mu = false, lambda2_nonneg = false;
    std::vector<CLI::App*> lmi_subs;
    for (const char* name : {"prop1", "prop2", "thm1", "thm2"}) {
        auto* sub = lmi->add_subcommand(name);
        sub->set_help_flag("--help", "print help");
        sub->add_option("--mu", sp.mu);
        sub->add_option("--delta", sp.delta);
        sub->add_option("--delta1", sp.delta1);
        sub->add_option("--kappa", sp.kappa);
        sub->add_option("--delta-bar", sp.delta_bar);
        sub->add_option("--h", sp.h);
        sub->add_option("--c-bound", sp.c_bound);
        sub->add_option("--eps", eps);
        if (std::string(name) == "prop1") sub->add_flag("--solve-mu", solve_mu);
        if (std::string(name) == "thm2") sub->add_flag("--lambda2-nonneg", lambda2_nonneg);
        lmi_subs.push_back(sub);
    }
    auto* maxh = lmi->add_subcommand("max-h", "bisect for the maximal feasible sampling period");
    std::string problem = "thm1";
    double h_lo = 0.30, h_hi = 0.50, tol = 0.01;
    maxh->add_option("--problem", problem)->check(CLI::IsMember({"thm1", "thm2"}))->required();
    maxh->add_option("--h-lo", h_lo)->required();
    maxh->add_option("--h-hi", h_hi)->required();
    maxh->add_option("--tol", tol);
    maxh->add_option("--mu", sp.mu);
    maxh->add_option("--delta", sp.delta);
    maxh->add_option("--delta1", sp.delta1);
    maxh->add_option("--kappa", sp.kappa);
    maxh->add_option("--delta-bar", sp.delta_bar);
    maxh->add_option("--c-bound", sp.c_bound);
    maxh->add_option("--eps", eps);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "integrate the closed loop from a config file");
    std::string config_path, out_dir_flag;
    simulate->add_option("--config", config_path)->required();
    simulate->add_option("--out-dir", out_dir_flag);

    // verify-lemmas
    auto* lemmas = app.add_subcommand("verify-lemmas", "randomized functional-inequality audit");
    std::uint64_t seed = 1;
    int count = 200;
    lemmas->add_option("--seed", seed);
    lemmas->add_option("--count", count)->check(CLI::PositiveNumber);

    // reproduce-sec5
    auto* rep = app.add_subcommand("reproduce-sec5", "turnkey reproduction of the numerical example");
    bool quick = false;
    double rep_delta = 0.1;
    rep->add_flag("--quick", quick);
    rep->add_option("--delta", rep_delta, "decay-rate override for the theorem-1 stage");
    rep->add_option("--out-dir", out_dir_flag);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (halanay->parsed()) {
            std::printf("%.12f\n", halanay_sigma(hp));
            return kExitOk;
        }
        if (lmi->parsed()) {
            if (maxh->parsed()) return run_max_h(problem, sp, h_lo, h_hi, tol, eps);
            const char* names[] = {"prop1", "prop2", "thm1", "thm2"};
            for (size_t i = 0; i < 4; ++i)
                if (lmi_subs[i]->parsed()) return run_lmi(names[i], sp, eps, solve_mu, lambda2_nonneg);
        }
        if (simulate->parsed()) return run_simulate(config_path, out_dir_flag);
        if (lemmas->parsed()) return run_verify_lemmas(seed, count);
        if (rep->parsed()) return run_reproduce(quick, rep_delta, out_dir_flag);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
