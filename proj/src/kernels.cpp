#include "kse2d/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace kse2d {

namespace {

bool cpu_supports_simd() {
#if !defined(KSE2D_HAVE_SIMD_KERNELS)
    return false;
#elif defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return true; // aarch64: native_simd lowers to NEON, always present
#endif
}

const KernelOps* select() {
    const char* env = std::getenv("KSE2D_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_kernels();
#if defined(KSE2D_HAVE_SIMD_KERNELS)
        if (std::strcmp(env, "simd") == 0) {
            if (!cpu_supports_simd())
                throw std::runtime_error("KSE2D_KERNELS=simd requested but CPU lacks support");
            return &simd_kernels();
        }
#endif
        throw std::runtime_error(std::string("unknown KSE2D_KERNELS value: ") + env);
    }
#if defined(KSE2D_HAVE_SIMD_KERNELS)
    if (cpu_supports_simd()) return &simd_kernels();
#endif
    return &scalar_kernels();
}

} // namespace

bool simd_kernels_available() { return cpu_supports_simd(); }

const KernelOps& active_kernels() {
    static const KernelOps* ops = select();
    return *ops;
}

} // namespace kse2d
