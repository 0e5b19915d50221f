#include "wf/kernel_eval.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace wf {

namespace {

std::uint64_t low_bits(std::uint64_t x, unsigned t) {
    return t == 0 ? 0 : x & ((std::uint64_t{1} << t) - 1);
}

}  // namespace

std::int64_t dirichlet_pow2_value(unsigned t, std::uint64_t x) {
    if (t > 62) throw std::domain_error("dirichlet_pow2_value: order 2^" + std::to_string(t) + " too large");
    return low_bits(x, t) == 0 ? (std::int64_t{1} << t) : 0;
}

std::int64_t fejer_pow2_scaled_value(unsigned t, std::uint64_t x) {
    if (t > 30) throw std::domain_error("fejer_pow2_scaled_value: order 2^" + std::to_string(t) + " too large");
    const std::uint64_t low = low_bits(x, t);
    if (low == 0)
        return t == 0 ? 1 : (std::int64_t{1} << (2 * t - 1)) + (std::int64_t{1} << (t - 1));
    if (std::has_single_bit(low)) {
        const unsigned u = static_cast<unsigned>(std::countr_zero(low));
        return std::int64_t{1} << (t + u - 1);  // u < t, so the shift is >= 0
    }
    return 0;
}

std::int64_t fejer_scaled_value(std::uint64_t n, std::uint64_t x) {
    if (n == 0) throw std::domain_error("fejer_scaled_value: index must be positive");
    if (n >= (std::uint64_t{1} << 25)) throw std::domain_error("fejer_scaled_value: index too large");
    std::int64_t acc = 0;
    std::int64_t sign = 1;
    std::uint64_t rest = n;
    while (rest != 0) {
        const unsigned b = 63 - static_cast<unsigned>(std::countl_zero(rest));
        rest &= ~(std::uint64_t{1} << b);  // rest is now n mod 2^b
        acc += sign * (fejer_pow2_scaled_value(b, x) +
                       static_cast<std::int64_t>(rest) * dirichlet_pow2_value(b, x));
        if ((x >> b) & 1) sign = -sign;  // w_{2^b}(x)
    }
    return acc;
}

}  // namespace wf
