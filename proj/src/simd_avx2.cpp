#include "wf/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace wf::simd {

namespace {

// h == 1: [a0 a1 a2 a3] -> [a0+a1, a0-a1, a2+a3, a2-a3]
inline __m256i butterfly_h1(__m256i a) {
    const __m256i s = _mm256_permute4x64_epi64(a, 0xA0);  // [a0 a0 a2 a2]
    const __m256i t = _mm256_permute4x64_epi64(a, 0xF5);  // [a1 a1 a3 a3]
    const __m256i sum = _mm256_add_epi64(s, t);
    const __m256i diff = _mm256_sub_epi64(s, t);
    return _mm256_blend_epi32(sum, diff, 0xCC);  // take diff in 64-bit lanes 1 and 3
}

// h == 2: [a0 a1 a2 a3] -> [a0+a2, a1+a3, a0-a2, a1-a3]
inline __m256i butterfly_h2(__m256i a) {
    const __m256i s = _mm256_permute4x64_epi64(a, 0x44);  // [a0 a1 a0 a1]
    const __m256i t = _mm256_permute4x64_epi64(a, 0xEE);  // [a2 a3 a2 a3]
    const __m256i sum = _mm256_add_epi64(s, t);
    const __m256i diff = _mm256_sub_epi64(s, t);
    return _mm256_blend_epi32(sum, diff, 0xF0);  // take diff in 64-bit lanes 2 and 3
}

void hadamard_pass_avx2(std::int64_t* v, std::size_t n, std::size_t h) {
    if (n < 4) {  // tiny transform: no full vector, fall back
        for (std::size_t base = 0; base < n; base += 2 * h)
            for (std::size_t j = base; j < base + h; ++j) {
                const std::int64_t a = v[j], b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        return;
    }
    if (h == 1) {
        for (std::size_t j = 0; j < n; j += 4)
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(v + j),
                                butterfly_h1(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + j))));
        return;
    }
    if (h == 2) {
        for (std::size_t j = 0; j < n; j += 4)
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(v + j),
                                butterfly_h2(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + j))));
        return;
    }
    for (std::size_t base = 0; base < n; base += 2 * h) {
        for (std::size_t j = base; j < base + h; j += 4) {
            const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + j));
            const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + j + h));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(v + j), _mm256_add_epi64(a, b));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(v + j + h), _mm256_sub_epi64(a, b));
        }
    }
}

void walsh_accumulate_avx2(std::int64_t* dst, std::uint64_t n, std::size_t count) {
    const __m256i nn = _mm256_set1_epi64x(static_cast<long long>(n));
    const __m256i one = _mm256_set1_epi64x(1);
    __m256i idx = _mm256_set_epi64x(3, 2, 1, 0);
    const __m256i step = _mm256_set1_epi64x(4);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256i t = _mm256_and_si256(idx, nn);
        // XOR-fold each 64-bit lane down to its parity bit.
        t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 32));
        t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 16));
        t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 8));
        t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 4));
        t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 2));
        t = _mm256_xor_si256(t, _mm256_srli_epi64(t, 1));
        t = _mm256_and_si256(t, one);
        const __m256i adj = _mm256_sub_epi64(one, _mm256_slli_epi64(t, 1));  // 1 - 2*parity
        const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(cur, adj));
        idx = _mm256_add_epi64(idx, step);
    }
    for (; i < count; ++i)
        dst[i] += (__builtin_parityll(n & static_cast<std::uint64_t>(i))) ? -1 : 1;
}

void vec_add_avx2(std::int64_t* acc, const std::int64_t* src, std::size_t count) {
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
        const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), _mm256_add_epi64(a, b));
    }
    for (; i < count; ++i) acc[i] += src[i];
}

}  // namespace

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

const Kernels& avx2_kernels() {
    static const Kernels k{"avx2", hadamard_pass_avx2, walsh_accumulate_avx2, vec_add_avx2};
    return k;
}

}  // namespace wf::simd

#endif
