#pragma once

// Closed-form point evaluation of the Dirichlet and Fejer kernels on the
// dyadic group, without materializing a grid.
//
// With coset index x (LSB-first bits of the dyadic digits):
//
//   D_{2^t}(x)       = 2^t   if the low t bits of x vanish, else 0;
//
//   2^t K_{2^t}(x)   = 2^{2t-1} + 2^{t-1}   if the low t bits vanish,
//                    = 2^{t+u-1}            if they carry the single bit u,
//                    = 0                    otherwise;
//
// and for general n with set bits b_1 > b_2 > ... the scaled kernel obeys
//
//   n K_n = sum_i ( prod_{j<i} w_{2^{b_j}} ) * ( 2^{b_i} K_{2^{b_i}}
//                                                + (n mod 2^{b_i}) D_{2^{b_i}} ),
//
// which the evaluator walks top bit down, flipping a sign per set bit of x.
// All three values are integers; they depend only on the low bits of x up to
// the top bit of the index, so x may live at any finer resolution.

#include <cstdint>

namespace wf {

// D_{2^t}(x); requires t <= 62.
std::int64_t dirichlet_pow2_value(unsigned t, std::uint64_t x);

// 2^t * K_{2^t}(x); requires t <= 30 so the value fits 62 bits.
std::int64_t fejer_pow2_scaled_value(unsigned t, std::uint64_t x);

// n * K_n(x); requires 1 <= n < 2^25 (values stay below 2^51).
std::int64_t fejer_scaled_value(std::uint64_t n, std::uint64_t x);

}  // namespace wf
