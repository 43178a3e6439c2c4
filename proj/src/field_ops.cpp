#include "kse2d/field_ops.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "kse2d/kernels.hpp"

namespace kse2d {

namespace {

void require_clamped(const Field& f, const char* op) {
    if (!f.clamped)
        throw std::invalid_argument(std::string(op) + ": input field must be clamped");
}

Field interior_stencil(const Field& f, void (*kernel)(const double*, double*, int)) {
    Field out(f.grid, 0.0, false);
    kernel(f.values.data(), out.values.data(), f.m());
    out.clamped = false;
    return out;
}

} // namespace

Field laplacian(const Field& f) {
    require_clamped(f, "laplacian");
    Field out = interior_stencil(f, active_kernels().laplacian);
    // one-sided boundary values: tangential part vanishes on a clamped field,
    // the normal part is (z_{-1} - 2 z_0 + z_1)/dx^2 = 2 z_1/dx^2
    const int m = f.m();
    const double invdx2 = double(m) * m;
    for (int k = 1; k < m; ++k) {
        out.at(0, k) = 2.0 * f.at(1, k) * invdx2;
        out.at(m, k) = 2.0 * f.at(m - 1, k) * invdx2;
        out.at(k, 0) = 2.0 * f.at(k, 1) * invdx2;
        out.at(k, m) = 2.0 * f.at(k, m - 1) * invdx2;
    }
    out.at(0, 0) = out.at(0, m) = out.at(m, 0) = out.at(m, m) = 0.0;
    return out;
}

Field biharmonic(const Field& f) {
    require_clamped(f, "biharmonic");
    return interior_stencil(f, active_kernels().biharmonic);
}

Field dx1(const Field& f) {
    require_clamped(f, "dx1");
    return interior_stencil(f, active_kernels().dx1);
}

Field dx2(const Field& f) {
    require_clamped(f, "dx2");
    return interior_stencil(f, active_kernels().dx2);
}

Field dx1x2(const Field& f) {
    require_clamped(f, "dx1x2");
    return interior_stencil(f, active_kernels().dx1x2);
}

double l2_sq(const Field& f) { return active_kernels().l2_trapezoid(f.values.data(), f.m()); }

double c0_norm(const Field& f) {
    return active_kernels().max_abs(f.values.data(), f.grid.node_count());
}

namespace {

double box_trapezoid(const Field& f, int i0, int i1, int j0, int j1, bool square) {
    double total = 0.0;
    for (int i = i0; i <= i1; ++i) {
        double s = 0.0;
        for (int j = j0; j <= j1; ++j) {
            double v = f.at(i, j);
            if (square) v *= v;
            const double wj = (j == j0 || j == j1) ? 0.5 : 1.0;
            s += wj * v;
        }
        const double wi = (i == i0 || i == i1) ? 0.5 : 1.0;
        total += wi * s;
    }
    const double dx = f.grid.dx();
    return total * dx * dx;
}

} // namespace

double integral_on(const Field& f, const Partition& p, const Subdomain& s) {
    int i0, i1, j0, j1;
    p.node_range(f.grid, s.j, i0, i1, j0, j1);
    return box_trapezoid(f, i0, i1, j0, j1, false);
}

double integral_sq_on(const Field& f, const Partition& p, const Subdomain& s) {
    int i0, i1, j0, j1;
    p.node_range(f.grid, s.j, i0, i1, j0, j1);
    return box_trapezoid(f, i0, i1, j0, j1, true);
}

double subdomain_mean(const Field& f, const Partition& p, const Subdomain& s) {
    return integral_on(f, p, s) / (p.delta_bar * p.delta_bar);
}

double point_value(const Field& f, const Partition& p, const Subdomain& s) {
    if (!p.aligned_with(f.grid))
        throw std::invalid_argument("point_value: grid not aligned with partition");
    const int m = f.m();
    const double ci = s.center_x1() * m;
    const double cj = s.center_x2() * m;
    const int i = static_cast<int>(std::lround(ci));
    const int j = static_cast<int>(std::lround(cj));
    if (std::fabs(ci - i) > 1e-9 || std::fabs(cj - j) > 1e-9)
        throw std::invalid_argument("point_value: subdomain center is not a grid node");
    return f.at(i, j);
}

Field residual_f_j(const Field& f, const Partition& p, const Subdomain& s, MeasurementMode mode) {
    const double ref =
        (mode == MeasurementMode::averaged) ? subdomain_mean(f, p, s) : point_value(f, p, s);
    Field out(f.grid, 0.0, false);
    int i0, i1, j0, j1;
    p.node_range(f.grid, s.j, i0, i1, j0, j1);
    for (int i = i0; i <= i1; ++i)
        for (int j = j0; j <= j1; ++j) out.at(i, j) = f.at(i, j) - ref;
    return out;
}

void write_field_csv(const Field& f, std::ostream& os) {
    os << "x1,x2,value\n";
    const int m = f.m();
    const double dx = f.grid.dx();
    char buf[96];
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= m; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", i * dx, j * dx, f.at(i, j));
            os << buf;
        }
    }
}

void write_field_csv(const Field& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_field_csv(f, os);
}

} // namespace kse2d
