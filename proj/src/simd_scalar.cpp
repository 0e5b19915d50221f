#include "wf/simd.hpp"

#include <bit>
#include <stdexcept>

namespace wf::simd {

namespace {

void hadamard_pass_scalar(std::int64_t* v, std::size_t n, std::size_t h) {
    for (std::size_t base = 0; base < n; base += 2 * h) {
        for (std::size_t j = base; j < base + h; ++j) {
            const std::int64_t a = v[j];
            const std::int64_t b = v[j + h];
            v[j] = a + b;
            v[j + h] = a - b;
        }
    }
}

void walsh_accumulate_scalar(std::int64_t* dst, std::uint64_t n, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i)
        dst[i] += (std::popcount(n & static_cast<std::uint64_t>(i)) & 1) ? -1 : 1;
}

void vec_add_scalar(std::int64_t* acc, const std::int64_t* src, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) acc[i] += src[i];
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{"scalar", hadamard_pass_scalar, walsh_accumulate_scalar, vec_add_scalar};
    return k;
}

void hadamard(std::span<std::int64_t> v, const Kernels& k) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("hadamard: length must be a power of two");
    for (std::size_t h = 1; h < n; h <<= 1) k.hadamard_pass(v.data(), n, h);
}

void hadamard(std::span<std::int64_t> v) { hadamard(v, active_kernels()); }

}  // namespace wf::simd
