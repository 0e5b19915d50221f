#include "wf/dyadic_index.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>

namespace wf {

unsigned top_bit(std::uint64_t n) {
    if (n == 0) throw std::domain_error("top_bit: undefined for 0");
    return 63u - static_cast<unsigned>(std::countl_zero(n));
}

unsigned bottom_bit(std::uint64_t n) {
    if (n == 0) throw std::domain_error("bottom_bit: undefined for 0");
    return static_cast<unsigned>(std::countr_zero(n));
}

DyadicIndex decompose(std::uint64_t n) {
    if (n == 0) throw std::domain_error("decompose: index must be positive");
    DyadicIndex d;
    d.value = n;
    d.top = top_bit(n);
    d.bottom = bottom_bit(n);
    d.bits.resize(d.top + 1);
    for (unsigned j = 0; j <= d.top; ++j) d.bits[j] = static_cast<std::uint8_t>((n >> j) & 1u);

    // Scan runs of set bits from the top down.
    unsigned j = d.top + 1;
    std::uint64_t rest = n;
    while (rest != 0) {
        unsigned high = top_bit(rest);
        unsigned low = high;
        while (low > 0 && ((rest >> (low - 1)) & 1u)) --low;
        d.blocks.push_back(Block{low, high});
        rest &= (low == 0) ? 0 : ((std::uint64_t{1} << low) - 1);
        (void)j;
    }
    return d;
}

unsigned rho(std::uint64_t n) {
    if (n == 0) throw std::domain_error("rho: undefined for 0");
    return top_bit(n) - bottom_bit(n);
}

unsigned variation(std::uint64_t n) {
    // Transitions of the padded bit sequence; equals twice the block count.
    return static_cast<unsigned>(std::popcount(n ^ (n << 1)));
}

std::uint64_t tail(std::uint64_t n, unsigned i) {
    unsigned r = static_cast<unsigned>(std::popcount(n));
    if (n == 0 || i < 1 || i > r)
        throw std::out_of_range("tail: position " + std::to_string(i) + " out of 1.." + std::to_string(r));
    std::uint64_t rest = n;
    for (unsigned k = 0; k < i; ++k) rest &= ~(std::uint64_t{1} << top_bit(rest));
    return rest;
}

BlockSet build_block_set(unsigned scale, const std::vector<std::uint64_t>& family) {
    BlockSet bs;
    bs.scale = scale;
    std::set<unsigned> members, lows, highs;
    const std::uint64_t lo = std::uint64_t{1} << scale;
    for (std::uint64_t n : family) {
        if (n < lo || n >= 2 * lo)
            throw std::domain_error("build_block_set: index " + std::to_string(n) +
                                    " outside [2^" + std::to_string(scale) + ", 2^" +
                                    std::to_string(scale + 1) + ")");
        for (const Block& b : decompose(n).blocks) {
            lows.insert(b.low);
            highs.insert(b.high);
            members.insert(b.low);
            members.insert(b.high);
        }
    }
    bs.members.assign(members.begin(), members.end());
    bs.l_set.assign(lows.begin(), lows.end());
    bs.t_set.assign(highs.begin(), highs.end());
    bs.cardinality = bs.members.size();
    return bs;
}

}  // namespace wf
