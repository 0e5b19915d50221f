#pragma once

// Binary-block combinatorics of Walsh indices.
//
// A positive integer n = sum_j n_j 2^j (LSB first) splits into maximal runs
// of consecutive set bits ("blocks").  A block covering bit positions
// l..t inclusive is stored as (low = l, high = t); blocks are kept in
// strictly descending position order, so blocks.front() contains the top
// set bit |n| and blocks.back() contains the lowest set bit [n].
// Derived quantities:
//   rho(n)       = |n| - [n]
//   variation(n) = n_0 + sum_{k>=1} |n_k - n_{k-1}|   (= 2 * #blocks)
//   tail(n, i)   = numeric value of the set bits strictly below the i-th
//                  largest set bit (the n^(i) of the kernel identities).
// A BlockSet collects, over a family of indices sharing the same top bit s,
// the set of all block endpoints (the A_s of the maximal-operator theory).

#include <cstdint>
#include <vector>

namespace wf {

struct Block {
    unsigned low;   // bottom bit position of the run
    unsigned high;  // top bit position of the run
};

struct DyadicIndex {
    std::uint64_t value = 0;
    std::vector<std::uint8_t> bits;  // LSB first, size top+1
    std::vector<Block> blocks;       // descending: blocks[i].low >= blocks[i+1].high + 2
    unsigned top = 0;                // |n|, position of highest set bit
    unsigned bottom = 0;             // [n], position of lowest set bit
};

struct BlockSet {
    unsigned scale = 0;                  // common top bit s of the generating family
    std::vector<unsigned> members;       // sorted union of all block endpoints
    std::vector<unsigned> l_set;         // sorted set of block bottoms
    std::vector<unsigned> t_set;         // sorted set of block tops
    std::size_t cardinality = 0;         // |members|
};

unsigned top_bit(std::uint64_t n);     // |n|; error on n = 0
unsigned bottom_bit(std::uint64_t n);  // [n]; error on n = 0

DyadicIndex decompose(std::uint64_t n);          // error on n = 0
unsigned rho(std::uint64_t n);                   // error on n = 0
unsigned variation(std::uint64_t n);             // variation(0) = 0
std::uint64_t tail(std::uint64_t n, unsigned i); // i in 1..popcount(n); error otherwise

// family: indices n with 2^s <= n < 2^{s+1}; error names the first offender.
BlockSet build_block_set(unsigned scale, const std::vector<std::uint64_t>& family);

}  // namespace wf
