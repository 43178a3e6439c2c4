#include <cmath>
#include <cstdlib>
#include <cstring>

#include "doctest.h"
#include "kse2d/grid.hpp"
#include "kse2d/kernels.hpp"
#include "kse2d/random_fields.hpp"

using namespace kse2d;

#if defined(__x86_64__) || defined(__aarch64__)

namespace {

void run_stencil_pair(void (*a)(const double*, double*, int), void (*b)(const double*, double*, int),
                      const Field& f) {
    Field oa(f.grid, 0.0, false), ob(f.grid, 0.0, false);
    a(f.values.data(), oa.values.data(), f.m());
    b(f.values.data(), ob.values.data(), f.m());
    CHECK(std::memcmp(oa.values.data(), ob.values.data(),
                      oa.values.size() * sizeof(double)) == 0);
}

} // namespace

TEST_CASE("scalar and simd kernels agree") {
    if (!simd_kernels_available()) {
        WARN("SIMD backend not supported on this CPU; skipping equivalence checks");
        return;
    }
    const KernelOps& s = scalar_kernels();
    const KernelOps& v = simd_kernels();
    ClampedFieldGenerator gen(42);
    for (int m : {8, 17, 33, 64}) {
        Field f = gen.next(Grid2D(m));
        CAPTURE(m);
        SUBCASE("stencil maps bitwise identical") {
            run_stencil_pair(s.dx1, v.dx1, f);
            run_stencil_pair(s.dx2, v.dx2, f);
            run_stencil_pair(s.dx1x2, v.dx1x2, f);
            run_stencil_pair(s.laplacian, v.laplacian, f);
            run_stencil_pair(s.biharmonic, v.biharmonic, f);
            run_stencil_pair(s.convect_x1, v.convect_x1, f);
        }
        SUBCASE("reductions equivalent") {
            const double ls = s.l2_trapezoid(f.values.data(), m);
            const double lv = v.l2_trapezoid(f.values.data(), m);
            CHECK(std::fabs(ls - lv) <= 1e-13 * std::max(1.0, std::fabs(ls)));
            const double ms = s.max_abs(f.values.data(), f.grid.node_count());
            const double mv = v.max_abs(f.values.data(), f.grid.node_count());
            CHECK(ms == mv);
        }
    }
}

TEST_CASE("runtime backend selection") {
    if (std::getenv("KSE2D_KERNELS") != nullptr) return; // explicit override in play
    const KernelOps& active = active_kernels();
    if (simd_kernels_available()) CHECK(std::strcmp(active.name, "simd") == 0);
    else CHECK(std::strcmp(active.name, "scalar") == 0);
}

#endif
