#pragma once

// Per-node stencil arithmetic shared by the scalar and SIMD kernel TUs.
// The expression shapes here fix the rounding behaviour; both TUs are compiled
// with -ffp-contract=off so results match bitwise across backends.

namespace kse2d::detail {

inline double dx1_node(const double* fm, const double* fp, int j, double inv2dx) {
    return (fp[j] - fm[j]) * inv2dx;
}

inline double dx2_node(const double* r, int j, double inv2dx) {
    return (r[j + 1] - r[j - 1]) * inv2dx;
}

inline double dx1x2_node(const double* fm, const double* fp, int j, double inv4dx2) {
    return ((fp[j + 1] - fp[j - 1]) - (fm[j + 1] - fm[j - 1])) * inv4dx2;
}

inline double laplacian_node(const double* fm, const double* r, const double* fp, int j,
                             double invdx2) {
    return ((fm[j] + fp[j]) + (r[j - 1] + r[j + 1]) - 4.0 * r[j]) * invdx2;
}

// 13-point biharmonic; jm2/jp2 carry the x2-direction ghost reflection
// (jm2 = j-2 reflected at the boundary, likewise jp2). The x1-direction
// reflection is handled by the caller's choice of the im2/ip2 row pointers.
inline double biharmonic_node(const double* im2, const double* im1, const double* c,
                              const double* ip1, const double* ip2, int j, int jm2, int jp2,
                              double invdx4) {
    const double cross = (im1[j - 1] + im1[j + 1]) + (ip1[j - 1] + ip1[j + 1]);
    const double axis1 = im1[j] + ip1[j];
    const double axis2 = c[j - 1] + c[j + 1];
    const double far = (im2[j] + ip2[j]) + (c[jm2] + c[jp2]);
    return (20.0 * c[j] - 8.0 * (axis1 + axis2) + 2.0 * cross + far) * invdx4;
}

inline double convect_x1_node(const double* fm, const double* fp, int j, double inv4dx) {
    return (fp[j] * fp[j] - fm[j] * fm[j]) * inv4dx;
}

} // namespace kse2d::detail
