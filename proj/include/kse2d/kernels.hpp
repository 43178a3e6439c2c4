#pragma once

namespace kse2d {

/// Inner-loop kernel table. Stencil entries write the interior nodes
/// i,j in [1,m-1] of an (m+1)x(m+1) row-major array (x1 = slow axis) and
/// assume a clamped input (zero boundary, ghost reflection z_{-1} = z_1 where
/// the 13-point stencil reaches outside). Boundary handling and preconditions
/// live in field_ops.
///
/// Scalar and SIMD variants of the stencil maps are bitwise identical (same
/// per-node arithmetic order, FP contraction disabled); the reductions may
/// differ in summation order and are equivalence-tested to 1e-13 relative.
struct KernelOps {
    const char* name;
    void (*dx1)(const double* f, double* out, int m);
    void (*dx2)(const double* f, double* out, int m);
    void (*dx1x2)(const double* f, double* out, int m);
    void (*laplacian)(const double* f, double* out, int m);
    void (*biharmonic)(const double* f, double* out, int m);
    void (*convect_x1)(const double* f, double* out, int m); // 0.5 * d(f^2)/dx1
    double (*l2_trapezoid)(const double* f, int m);          // full tensor trapezoid * dx^2
    double (*max_abs)(const double* f, int n);
};

const KernelOps& scalar_kernels();

#if defined(KSE2D_HAVE_SIMD_KERNELS)
const KernelOps& simd_kernels();
#endif
bool simd_kernels_available();

/// Runtime-selected backend: SIMD when the CPU supports it, else scalar.
/// Environment override KSE2D_KERNELS=scalar|simd (checked once).
const KernelOps& active_kernels();

} // namespace kse2d
