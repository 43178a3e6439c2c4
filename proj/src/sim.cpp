#include "kse2d/sim.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "kse2d/kernels.hpp"
#include "kse2d/random_fields.hpp"

namespace kse2d {

void SimConfig::validate() const {
    if (m < 8) throw std::invalid_argument("sim: m must be >= 8");
    if (!(dt > 0) || !(T >= 0)) throw std::invalid_argument("sim: need dt > 0 and T >= 0");
    if (!(delta_bar > 0 && delta_bar <= 1))
        throw std::invalid_argument("sim: delta_bar must be in (0,1]");
    const double ns = 1.0 / delta_bar;
    if (std::fabs(ns - std::lround(ns)) > 1e-9)
        throw std::invalid_argument("sim: 1/delta_bar must be an integer");
    if (m % (2 * n_side()) != 0)
        throw std::invalid_argument("sim: m must be divisible by 2/delta_bar (centers on nodes)");
    if (control_mode == ControlMode::sampled) {
        if (!(h > 0)) throw std::invalid_argument("sim: h must be > 0");
        const double k = h / dt;
        if (std::fabs(k - std::lround(k)) > 1e-9 * std::max(1.0, k) || std::lround(k) < 1)
            throw std::invalid_argument("sim: h/dt must be a positive integer");
    }
    if (!(monitor.p1 > 0) || !(monitor.p2 > 0))
        throw std::invalid_argument("sim: monitor p1, p2 must be > 0");
    if (output_stride < 1) throw std::invalid_argument("sim: output_stride must be >= 1");
    if (ic != "sinsin" && ic != "zero") throw std::invalid_argument("sim: unknown ic " + ic);
}

void MonitorSeries::write_csv(std::ostream& os) const {
    os << "t,V,V1,c0,lap_sq,blowup\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%d\n", r.t, r.V, r.V1, r.c0,
                      r.lap_sq, r.blowup ? 1 : 0);
        os << buf;
    }
}

void apply_control(Field& accumulator, const Partition& p, const std::vector<double>& held_u) {
    if (static_cast<int>(held_u.size()) != p.count())
        throw std::invalid_argument("apply_control: held_u size mismatch");
    const int m = accumulator.m();
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j)
            accumulator.at(i, j) += held_u[static_cast<size_t>(p.owner(accumulator.grid, i, j))];
}

namespace {

Field make_ic(const SimConfig& cfg) {
    Grid2D g(cfg.m);
    if (cfg.ic == "zero") return Field(g);
    return sin_sin_field(g, cfg.ic_amplitude);
}

int reflect(int k, int m) {
    if (k < 0) return -k;
    if (k > m) return 2 * m - k;
    return k;
}

// I + dt*L on the interior unknowns, L = biharmonic + (1-kappa) D11 - kappa D22,
// clamped boundary (Dirichlet zeros, ghost reflection for the 13-point part).
Eigen::SparseMatrix<double> build_system(int m, double dt, double kappa) {
    const int n = (m - 1) * (m - 1);
    const double invdx2 = double(m) * m;
    const double invdx4 = invdx2 * invdx2;
    auto idx = [m](int i, int j) { return (i - 1) * (m - 1) + (j - 1); };

    struct Off { int di, dj; double c; };
    static const Off bihar[] = {
        {0, 0, 20}, {1, 0, -8}, {-1, 0, -8}, {0, 1, -8}, {0, -1, -8},
        {1, 1, 2},  {1, -1, 2}, {-1, 1, 2},  {-1, -1, 2},
        {2, 0, 1},  {-2, 0, 1}, {0, 2, 1},   {0, -2, 1},
    };

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(n) * 17);
    for (int i = 1; i < m; ++i) {
        for (int j = 1; j < m; ++j) {
            const int row = idx(i, j);
            trip.emplace_back(row, row, 1.0);
            for (const auto& o : bihar) {
                const int ri = reflect(i + o.di, m);
                const int rj = reflect(j + o.dj, m);
                if (ri <= 0 || ri >= m || rj <= 0 || rj >= m) continue; // boundary zeros
                trip.emplace_back(row, idx(ri, rj), dt * o.c * invdx4);
            }
            const double c11 = (1.0 - kappa) * invdx2;
            const double c22 = -kappa * invdx2;
            trip.emplace_back(row, row, dt * (-2.0 * c11 - 2.0 * c22));
            if (i > 1) trip.emplace_back(row, idx(i - 1, j), dt * c11);
            if (i < m - 1) trip.emplace_back(row, idx(i + 1, j), dt * c11);
            if (j > 1) trip.emplace_back(row, idx(i, j - 1), dt * c22);
            if (j < m - 1) trip.emplace_back(row, idx(i, j + 1), dt * c22);
        }
    }
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

} // namespace

Simulator::Simulator(const SimConfig& cfg)
    : cfg_(cfg),
      partition_(Partition::uniform(cfg.n_side())),
      state_(Grid2D(cfg.m)),
      control_(Grid2D(cfg.m), 0.0, false) {
    cfg_.validate();
    state_.z = make_ic(cfg_);
    state_.held_u.assign(static_cast<size_t>(partition_.count()), 0.0);
    system_ = build_system(cfg_.m, cfg_.dt, cfg_.kappa);
    chol_.compute(system_);
    if (chol_.info() != Eigen::Success)
        throw std::invalid_argument("sim: implicit operator lost positive definiteness "
                                    "(dt too large for the factorization contract)");
}

bool Simulator::at_sampling_instant(long step_index) const {
    if (cfg_.control_mode == ControlMode::continuous) return true;
    return step_index % cfg_.steps_per_sample() == 0;
}

void Simulator::sample_and_hold() {
    if (cfg_.control_mode == ControlMode::sampled) {
        const double k = state_.t / cfg_.h;
        if (std::fabs(k - std::lround(k)) > 1e-9 * std::max(1.0, std::fabs(k)))
            throw std::logic_error("sample_and_hold: t is not a sampling instant");
    }
    for (const auto& s : partition_.subdomains) {
        const double y = (cfg_.meas_mode == MeasurementMode::averaged)
                             ? subdomain_mean(state_.z, partition_, s)
                             : point_value(state_.z, partition_, s);
        state_.held_u[static_cast<size_t>(s.j)] = -cfg_.mu * y;
    }
    state_.last_sample_t = state_.t;
    state_.zt_history.clear();
    sample_times_.push_back(state_.t);
    control_.values.assign(control_.values.size(), 0.0);
    apply_control(control_, partition_, state_.held_u);
}

void Simulator::step() {
    const int m = cfg_.m;
    const double dt = cfg_.dt;
    Field conv(state_.z.grid, 0.0, false);
    active_kernels().convect_x1(state_.z.values.data(), conv.values.data(), m);

    const int n = (m - 1) * (m - 1);
    Eigen::VectorXd rhs(n);
    for (int i = 1; i < m; ++i)
        for (int j = 1; j < m; ++j)
            rhs[(i - 1) * (m - 1) + (j - 1)] =
                state_.z.at(i, j) + dt * (control_.at(i, j) - conv.at(i, j));
    const Eigen::VectorXd sol = chol_.solve(rhs);

    double zt_sq_sum = 0.0; // interior trapezoid of ((z+ - z)/dt)^2; boundary diffs are zero
    const double invdt = 1.0 / dt;
    for (int i = 1; i < m; ++i) {
        for (int j = 1; j < m; ++j) {
            const double znew = sol[(i - 1) * (m - 1) + (j - 1)];
            const double d = (znew - state_.z.at(i, j)) * invdt;
            zt_sq_sum += d * d;
            state_.z.at(i, j) = znew;
        }
    }
    const double dx = state_.z.grid.dx();
    state_.zt_history.push_back(zt_sq_sum * dx * dx);
    state_.t = (step_index_ + 1) * dt;
    ++step_index_;
}

MonitorRow Simulator::monitor_row() const {
    MonitorRow row;
    row.t = state_.t;
    row.V = l2_sq(state_.z);
    row.c0 = c0_norm(state_.z);
    row.lap_sq = l2_sq(laplacian(state_.z));
    const MonitorParams& mp = cfg_.monitor;
    double hist = 0.0;
    const double dt = cfg_.dt;
    for (size_t k = 0; k < state_.zt_history.size(); ++k) {
        const double s = state_.last_sample_t + (static_cast<double>(k) + 0.5) * dt;
        hist += std::exp(2.0 * mp.delta * (s - row.t)) * state_.zt_history[k] * dt;
    }
    const double horizon = (cfg_.control_mode == ControlMode::sampled) ? cfg_.h : cfg_.dt;
    const double t_next = state_.last_sample_t + horizon;
    row.V1 = mp.p1 * row.V + mp.p2 * row.lap_sq + mp.r * (t_next - row.t) * hist;
    row.blowup = !(row.c0 <= 1e6) || !std::isfinite(row.V) || !std::isfinite(row.lap_sq);
    return row;
}

MonitorSeries Simulator::run(const std::function<void(double, const Field&)>& snapshot_sink) {
    MonitorSeries series;
    const long n_steps = static_cast<long>(std::llround(cfg_.T / cfg_.dt));
    std::vector<bool> snapped(cfg_.snapshot_times.size(), false);
    auto maybe_snapshot = [&](double t) {
        if (!snapshot_sink) return;
        for (size_t k = 0; k < cfg_.snapshot_times.size(); ++k) {
            if (!snapped[k] && std::fabs(t - cfg_.snapshot_times[k]) <= 0.5 * cfg_.dt) {
                snapshot_sink(cfg_.snapshot_times[k], state_.z);
                snapped[k] = true;
            }
        }
    };

    sample_and_hold();
    series.rows.push_back(monitor_row());
    maybe_snapshot(0.0);
    for (long k = 1; k <= n_steps; ++k) {
        step();
        const bool emit = (k % cfg_.output_stride == 0) || k == n_steps;
        MonitorRow row = monitor_row();
        if (row.blowup) {
            series.rows.push_back(row);
            series.blowup = true;
            break;
        }
        if (emit) series.rows.push_back(row);
        maybe_snapshot(state_.t);
        if (k < n_steps && at_sampling_instant(k)) sample_and_hold();
    }
    return series;
}

MonitorSeries run(const SimConfig& cfg, const std::function<void(double, const Field&)>& sink) {
    Simulator sim(cfg);
    return sim.run(sink);
}

MonitorSeries run_continuous(SimConfig cfg,
                             const std::function<void(double, const Field&)>& sink) {
    cfg.control_mode = ControlMode::continuous;
    Simulator sim(cfg);
    return sim.run(sink);
}

} // namespace kse2d
