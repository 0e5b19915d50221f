#include "wf/simd.hpp"

#include <cstdlib>
#include <string>

namespace wf::simd {

namespace {

const Kernels& pick() {
    const char* env = std::getenv("WF_SIMD");
    const std::string want = env ? env : "";
    if (want == "scalar") return scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
    if ((want.empty() || want == "avx2") && cpu_has_avx2()) return avx2_kernels();
#endif
#if defined(__aarch64__)
    if (want.empty() || want == "neon") return neon_kernels();
#endif
    return scalar_kernels();
}

}  // namespace

const Kernels& active_kernels() {
    static const Kernels& k = pick();
    return k;
}

}  // namespace wf::simd
