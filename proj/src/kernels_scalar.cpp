#include "kse2d/kernels.hpp"

#include <cmath>

#include "kse2d/detail/stencil_node.hpp"

namespace kse2d {
namespace {

using namespace detail;

void s_dx1(const double* f, double* out, int m) {
    const int n = m + 1;
    const double inv2dx = 0.5 * m;
    for (int i = 1; i < m; ++i) {
        const double* fm = f + (i - 1) * n;
        const double* fp = f + (i + 1) * n;
        double* o = out + i * n;
        for (int j = 1; j < m; ++j) o[j] = dx1_node(fm, fp, j, inv2dx);
    }
}

void s_dx2(const double* f, double* out, int m) {
    const int n = m + 1;
    const double inv2dx = 0.5 * m;
    for (int i = 1; i < m; ++i) {
        const double* r = f + i * n;
        double* o = out + i * n;
        for (int j = 1; j < m; ++j) o[j] = dx2_node(r, j, inv2dx);
    }
}

void s_dx1x2(const double* f, double* out, int m) {
    const int n = m + 1;
    const double inv4dx2 = 0.25 * double(m) * m;
    for (int i = 1; i < m; ++i) {
        const double* fm = f + (i - 1) * n;
        const double* fp = f + (i + 1) * n;
        double* o = out + i * n;
        for (int j = 1; j < m; ++j) o[j] = dx1x2_node(fm, fp, j, inv4dx2);
    }
}

void s_laplacian(const double* f, double* out, int m) {
    const int n = m + 1;
    const double invdx2 = double(m) * m;
    for (int i = 1; i < m; ++i) {
        const double* fm = f + (i - 1) * n;
        const double* r = f + i * n;
        const double* fp = f + (i + 1) * n;
        double* o = out + i * n;
        for (int j = 1; j < m; ++j) o[j] = laplacian_node(fm, r, fp, j, invdx2);
    }
}

void s_biharmonic(const double* f, double* out, int m) {
    const int n = m + 1;
    const double invdx4 = double(m) * m * double(m) * m;
    for (int i = 1; i < m; ++i) {
        // ghost reflection across x1 boundaries: row -1 -> row 1, row m+1 -> row m-1
        const double* im2 = f + (i == 1 ? 1 : i - 2) * n;
        const double* im1 = f + (i - 1) * n;
        const double* c = f + i * n;
        const double* ip1 = f + (i + 1) * n;
        const double* ip2 = f + (i == m - 1 ? m - 1 : i + 2) * n;
        double* o = out + i * n;
        for (int j = 1; j < m; ++j) {
            const int jm2 = (j == 1) ? 1 : j - 2;
            const int jp2 = (j == m - 1) ? m - 1 : j + 2;
            o[j] = biharmonic_node(im2, im1, c, ip1, ip2, j, jm2, jp2, invdx4);
        }
    }
}

void s_convect_x1(const double* f, double* out, int m) {
    const int n = m + 1;
    const double inv4dx = 0.25 * m;
    for (int i = 1; i < m; ++i) {
        const double* fm = f + (i - 1) * n;
        const double* fp = f + (i + 1) * n;
        double* o = out + i * n;
        for (int j = 1; j < m; ++j) o[j] = convect_x1_node(fm, fp, j, inv4dx);
    }
}

double s_l2_trapezoid(const double* f, int m) {
    const int n = m + 1;
    double total = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double* r = f + i * n;
        double s = 0.5 * r[0] * r[0];
        for (int j = 1; j < m; ++j) s += r[j] * r[j];
        s += 0.5 * r[m] * r[m];
        total += (i == 0 || i == m) ? 0.5 * s : s;
    }
    const double dx = 1.0 / m;
    return total * dx * dx;
}

double s_max_abs(const double* f, int count) {
    double mx = 0.0;
    for (int k = 0; k < count; ++k) {
        const double a = std::fabs(f[k]);
        if (a > mx) mx = a;
    }
    return mx;
}

} // namespace

const KernelOps& scalar_kernels() {
    static const KernelOps ops{
        "scalar", s_dx1, s_dx2, s_dx1x2, s_laplacian, s_biharmonic, s_convect_x1,
        s_l2_trapezoid, s_max_abs,
    };
    return ops;
}

} // namespace kse2d
