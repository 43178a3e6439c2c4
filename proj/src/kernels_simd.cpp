#include "kse2d/kernels.hpp"

#include <cmath>
#include <experimental/simd>

#include "kse2d/detail/stencil_node.hpp"

// std::experimental::simd variant of the inner loops. On x86-64 this TU is
// compiled with -mavx2 (native_simd<double> = 4 lanes); on aarch64 the same
// source lowers to NEON. Per-node arithmetic mirrors detail/stencil_node.hpp
// exactly so stencil outputs match the scalar backend bitwise.

namespace stdx = std::experimental;

namespace kse2d {
namespace {

using namespace detail;
using vd = stdx::native_simd<double>;
constexpr int W = static_cast<int>(vd::size());

inline vd load(const double* p) {
    vd v;
    v.copy_from(p, stdx::element_aligned);
    return v;
}

void v_dx1(const double* f, double* out, int m) {
    const int n = m + 1;
    const double inv2dx = 0.5 * m;
    const vd c(inv2dx);
    for (int i = 1; i < m; ++i) {
        const double* fm = f + (i - 1) * n;
        const double* fp = f + (i + 1) * n;
        double* o = out + i * n;
        int j = 1;
        for (; j + W <= m; j += W) {
            const vd r = (load(fp + j) - load(fm + j)) * c;
            r.copy_to(o + j, stdx::element_aligned);
        }
        for (; j < m; ++j) o[j] = dx1_node(fm, fp, j, inv2dx);
    }
}

void v_dx2(const double* f, double* out, int m) {
    const int n = m + 1;
    const double inv2dx = 0.5 * m;
    const vd c(inv2dx);
    for (int i = 1; i < m; ++i) {
        const double* r = f + i * n;
        double* o = out + i * n;
        int j = 1;
        for (; j + W <= m; j += W) {
            const vd v = (load(r + j + 1) - load(r + j - 1)) * c;
            v.copy_to(o + j, stdx::element_aligned);
        }
        for (; j < m; ++j) o[j] = dx2_node(r, j, inv2dx);
    }
}

void v_dx1x2(const double* f, double* out, int m) {
    const int n = m + 1;
    const double inv4dx2 = 0.25 * double(m) * m;
    const vd c(inv4dx2);
    for (int i = 1; i < m; ++i) {
        const double* fm = f + (i - 1) * n;
        const double* fp = f + (i + 1) * n;
        double* o = out + i * n;
        int j = 1;
        for (; j + W <= m; j += W) {
            const vd v = ((load(fp + j + 1) - load(fp + j - 1)) -
                          (load(fm + j + 1) - load(fm + j - 1))) * c;
            v.copy_to(o + j, stdx::element_aligned);
        }
        for (; j < m; ++j) o[j] = dx1x2_node(fm, fp, j, inv4dx2);
    }
}

void v_laplacian(const double* f, double* out, int m) {
    const int n = m + 1;
    const double invdx2 = double(m) * m;
    const vd c(invdx2), four(4.0);
    for (int i = 1; i < m; ++i) {
        const double* fm = f + (i - 1) * n;
        const double* r = f + i * n;
        const double* fp = f + (i + 1) * n;
        double* o = out + i * n;
        int j = 1;
        for (; j + W <= m; j += W) {
            const vd v = ((load(fm + j) + load(fp + j)) + (load(r + j - 1) + load(r + j + 1)) -
                          four * load(r + j)) * c;
            v.copy_to(o + j, stdx::element_aligned);
        }
        for (; j < m; ++j) o[j] = laplacian_node(fm, r, fp, j, invdx2);
    }
}

void v_biharmonic(const double* f, double* out, int m) {
    const int n = m + 1;
    const double invdx4 = double(m) * m * double(m) * m;
    const vd c20(20.0), c8(8.0), c2(2.0), cd(invdx4);
    for (int i = 1; i < m; ++i) {
        const double* im2 = f + (i == 1 ? 1 : i - 2) * n;
        const double* im1 = f + (i - 1) * n;
        const double* cr = f + i * n;
        const double* ip1 = f + (i + 1) * n;
        const double* ip2 = f + (i == m - 1 ? m - 1 : i + 2) * n;
        double* o = out + i * n;
        o[1] = biharmonic_node(im2, im1, cr, ip1, ip2, 1, 1, 3, invdx4);
        int j = 2;
        for (; j + W <= m - 1; j += W) {
            const vd cross = (load(im1 + j - 1) + load(im1 + j + 1)) +
                             (load(ip1 + j - 1) + load(ip1 + j + 1));
            const vd axis1 = load(im1 + j) + load(ip1 + j);
            const vd axis2 = load(cr + j - 1) + load(cr + j + 1);
            const vd far = (load(im2 + j) + load(ip2 + j)) + (load(cr + j - 2) + load(cr + j + 2));
            const vd v = (c20 * load(cr + j) - c8 * (axis1 + axis2) + c2 * cross + far) * cd;
            v.copy_to(o + j, stdx::element_aligned);
        }
        for (; j < m - 1; ++j)
            o[j] = biharmonic_node(im2, im1, cr, ip1, ip2, j, j - 2, j + 2, invdx4);
        if (m - 1 >= 2)
            o[m - 1] = biharmonic_node(im2, im1, cr, ip1, ip2, m - 1, m - 3, m - 1, invdx4);
    }
}

void v_convect_x1(const double* f, double* out, int m) {
    const int n = m + 1;
    const double inv4dx = 0.25 * m;
    const vd c(inv4dx);
    for (int i = 1; i < m; ++i) {
        const double* fm = f + (i - 1) * n;
        const double* fp = f + (i + 1) * n;
        double* o = out + i * n;
        int j = 1;
        for (; j + W <= m; j += W) {
            const vd a = load(fp + j), b = load(fm + j);
            const vd v = (a * a - b * b) * c;
            v.copy_to(o + j, stdx::element_aligned);
        }
        for (; j < m; ++j) o[j] = convect_x1_node(fm, fp, j, inv4dx);
    }
}

double v_l2_trapezoid(const double* f, int m) {
    const int n = m + 1;
    double total = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double* r = f + i * n;
        vd acc(0.0);
        int j = 1;
        for (; j + W <= m; j += W) {
            const vd v = load(r + j);
            acc += v * v;
        }
        double s = stdx::reduce(acc);
        for (; j < m; ++j) s += r[j] * r[j];
        s += 0.5 * r[0] * r[0] + 0.5 * r[m] * r[m];
        total += (i == 0 || i == m) ? 0.5 * s : s;
    }
    const double dx = 1.0 / m;
    return total * dx * dx;
}

double v_max_abs(const double* f, int count) {
    vd acc(0.0);
    int k = 0;
    for (; k + W <= count; k += W) {
        vd v = load(f + k);
        where(v < 0.0, v) = -v;
        acc = stdx::max(acc, v);
    }
    double mx = stdx::hmax(acc);
    for (; k < count; ++k) {
        const double a = std::fabs(f[k]);
        if (a > mx) mx = a;
    }
    return mx;
}

} // namespace

const KernelOps& simd_kernels() {
    static const KernelOps ops{
        "simd", v_dx1, v_dx2, v_dx1x2, v_laplacian, v_biharmonic, v_convect_x1,
        v_l2_trapezoid, v_max_abs,
    };
    return ops;
}

} // namespace kse2d
