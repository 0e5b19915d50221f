#pragma once

// int64 inner-loop kernels of the transform core, with a scalar reference
// implementation and vector variants selected at runtime.  All variants
// compute bit-identical results (pure integer arithmetic); the unit tests
// assert equivalence of every compiled backend against the scalar one.

#include <cstddef>
#include <cstdint>
#include <span>

namespace wf::simd {

struct Kernels {
    const char* name;
    // One in-place Walsh-Hadamard butterfly stage with half-block h (a power
    // of two dividing n/2): pairwise (a, b) -> (a+b, a-b) within each block
    // of length 2h.
    void (*hadamard_pass)(std::int64_t* v, std::size_t n, std::size_t h);
    // dst[i] += (-1)^{popcount(n & i)} for i in [0, count).
    void (*walsh_accumulate)(std::int64_t* dst, std::uint64_t n, std::size_t count);
    // acc[i] += src[i].
    void (*vec_add)(std::int64_t* acc, const std::int64_t* src, std::size_t count);
};

const Kernels& scalar_kernels();

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_has_avx2();
const Kernels& avx2_kernels();  // only valid to use when cpu_has_avx2()
#endif
#if defined(__aarch64__)
const Kernels& neon_kernels();
#endif

// Backend chosen once per process from CPU features; the environment
// variable WF_SIMD=scalar|avx2|neon forces a specific one (silently falling
// back to scalar when the request is unavailable).
const Kernels& active_kernels();

// Full unnormalized Walsh-Hadamard transform in place; v.size() must be a
// power of two.  Involutive up to scaling: H(H(v)) == v.size() * v.
void hadamard(std::span<std::int64_t> v);
void hadamard(std::span<std::int64_t> v, const Kernels& k);

}  // namespace wf::simd
