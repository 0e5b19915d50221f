#include "wf/simd.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <bit>

namespace wf::simd {

namespace {

void hadamard_pass_neon(std::int64_t* v, std::size_t n, std::size_t h) {
    if (h == 1) {
        for (std::size_t j = 0; j < n; j += 2) {
            const std::int64_t a = v[j], b = v[j + 1];
            v[j] = a + b;
            v[j + 1] = a - b;
        }
        return;
    }
    for (std::size_t base = 0; base < n; base += 2 * h) {
        for (std::size_t j = base; j < base + h; j += 2) {
            const int64x2_t a = vld1q_s64(v + j);
            const int64x2_t b = vld1q_s64(v + j + h);
            vst1q_s64(v + j, vaddq_s64(a, b));
            vst1q_s64(v + j + h, vsubq_s64(a, b));
        }
    }
}

void walsh_accumulate_neon(std::int64_t* dst, std::uint64_t n, std::size_t count) {
    const uint64x2_t nn = vdupq_n_u64(n);
    const int64x2_t one = vdupq_n_s64(1);
    uint64x2_t idx = {0, 1};
    const uint64x2_t step = vdupq_n_u64(2);
    std::size_t i = 0;
    for (; i + 2 <= count; i += 2) {
        uint64x2_t t = vandq_u64(idx, nn);
        t = veorq_u64(t, vshrq_n_u64(t, 32));
        t = veorq_u64(t, vshrq_n_u64(t, 16));
        t = veorq_u64(t, vshrq_n_u64(t, 8));
        t = veorq_u64(t, vshrq_n_u64(t, 4));
        t = veorq_u64(t, vshrq_n_u64(t, 2));
        t = veorq_u64(t, vshrq_n_u64(t, 1));
        t = vandq_u64(t, vdupq_n_u64(1));
        const int64x2_t adj = vsubq_s64(one, vshlq_n_s64(vreinterpretq_s64_u64(t), 1));
        vst1q_s64(dst + i, vaddq_s64(vld1q_s64(dst + i), adj));
        idx = vaddq_u64(idx, step);
    }
    for (; i < count; ++i)
        dst[i] += (std::popcount(n & static_cast<std::uint64_t>(i)) & 1) ? -1 : 1;
}

void vec_add_neon(std::int64_t* acc, const std::int64_t* src, std::size_t count) {
    std::size_t i = 0;
    for (; i + 2 <= count; i += 2) vst1q_s64(acc + i, vaddq_s64(vld1q_s64(acc + i), vld1q_s64(src + i)));
    for (; i < count; ++i) acc[i] += src[i];
}

}  // namespace

const Kernels& neon_kernels() {
    static const Kernels k{"neon", hadamard_pass_neon, walsh_accumulate_neon, vec_add_neon};
    return k;
}

}  // namespace wf::simd

#endif
