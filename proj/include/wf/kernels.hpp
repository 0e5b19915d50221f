#pragma once

// Dirichlet and Fejer kernels on the dyadic group, the partial-sum and
// Fejer-mean operators they generate, and exact verification sweeps for the
// identities and pointwise bounds the rest of the artifact builds on.
//
//   D_n = sum_{k<n} w_k,          K_n = (1/n) sum_{k=1..n} D_k,
//   S_n f = sum_{k<n} f^(k) w_k,  sigma_n f = (1/n) sum_{k=1..n} S_k f
//                                           = sum_{j<n} ((n-j)/n) f^(j) w_j
//                                           = f * K_n.
//
// The verification targets, with n's maximal runs of set bits ("blocks")
// written bottom endpoint l_i, top endpoint t_i:
//
//   power-of-two closed forms:  D_{2^m} = 2^m on I_m and 0 elsewhere;
//     K_{2^m} = (2^m+1)/2 on I_m, 2^{u-1} on I_m(e_u) for u < m, 0 elsewhere;
//
//   block decomposition:  with set bits b_1 > b_2 > ... of n,
//     n K_n = sum_i (prod_{j<i} w_{2^{b_j}}) (2^{b_i} K_{2^{b_i}}
//                                             + (n mod 2^{b_i}) D_{2^{b_i}});
//
//   lower bounds on test regions:  n|K_n| >= 2^{2t_i-2} on the region that
//     zeroes bits 0..t_i and sets bits t_i+1, t_i+2 (gap_pair), and claimed
//     >= 2^{2l_i-4} on the region that sets bits l_i-1, l_i with zeros below
//     (edge_pair; for l_i = 0 the region sets bits 0 and 1); the relaxed
//     variants lower the exponents to 2t_i-5 and 2l_i-5;
//
//   upper bound by block kernels:  |n K_n| <= c * sum over blocks of
//     (2^{l_i} K_{2^{l_i}} + 2^{t_i} K_{2^{t_i}} + 2^{l_i} sum_{k=l_i}^{t_i} D_{2^k});
//
//   tail integral bound:  for n >= 2^M and x in the cover piece of the
//     complement of I_M with markers (k, l),
//     int_{I_M} |K_n(x+t)| dmu(t) <= c * n * 2^{k+l-M}.
//
// Every comparison is exact (integer or rational); floating point never
// enters a verdict.

#include "wf/dyadic_index.hpp"
#include "wf/grid.hpp"
#include "wf/report.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace wf {

// D_n at resolution M; requires n <= 2^M.  Integer-valued; int D_n = 1 (n >= 1).
GridFunction dirichlet(std::uint64_t n, unsigned M);

// K_n at resolution M via the multiplier route sum_{j<n} ((n-j)/n) w_j;
// requires 1 <= n <= 2^M.  Denominators divide n; int K_n = 1.
GridFunction fejer(std::uint64_t n, unsigned M);

// n*K_n at resolution M as raw int64 cell values (closed-form evaluation,
// no transform); requires 1 <= n < 2^25.
std::vector<std::int64_t> fejer_times_n_grid(std::uint64_t n, unsigned M);

// S_n f: keep coefficients below n; requires n <= 2^M.  S_0 f = 0.
GridFunction partial_sum(const GridFunction& f, std::uint64_t n);

// sigma_n f via the multiplier route; requires 1 <= n <= 2^M.
GridFunction fejer_mean(const GridFunction& f, std::uint64_t n);

// sigma_n f as the convolution f * K_n (cross-check route, exact-equal).
GridFunction fejer_mean_convolution(const GridFunction& f, std::uint64_t n);

// Test region on which a lower bound is asserted.  The constraint fixes the
// low `fixed_bits` bits of the coset index to `base`; higher bits are free.
struct TestRegion {
    enum class Kind { edge_pair, gap_pair };
    Kind kind;
    unsigned anchor = 0;     // block endpoint the region is attached to
    std::uint64_t base = 0;  // required low-bit pattern
    unsigned fixed_bits = 0;
    Rational measure;

    std::vector<std::uint64_t> cosets(unsigned M) const;  // requires M >= fixed_bits
};

// Bits l-1 and l set, zeros below (for l = 0: bits 0 and 1 set).
TestRegion edge_pair_region(unsigned l);
// Bits 0..t zero, bits t+1 and t+2 set.
TestRegion gap_pair_region(unsigned t);

// --- verification sweeps ---------------------------------------------------
// Reports use these conventions: for equality checks worst_ratio is the
// largest absolute difference seen (0 when the check passes); for lower
// bounds it is the smallest value of (region minimum)/(claimed bound), so
// pass means worst_ratio >= 1; for upper bounds it is the largest
// LHS/RHS ratio, which is also the minimal admissible constant.

// D_{2^m} = 2^m on I_m, 0 elsewhere, for all m <= max_exponent at M = max_exponent + 2.
VerificationReport verify_pow2_dirichlet(unsigned max_exponent);

// K_{2^m} equals its three-case closed form at resolution M; requires m < M.
VerificationReport verify_pow2_fejer(unsigned m, unsigned M);
VerificationReport verify_pow2_fejer_sweep(unsigned max_resolution);  // all m < M <= max

// Exact pointwise equality of n K_n with the block decomposition assembled
// from walsh products, dirichlet and fejer grids at M = |n| + 2.
VerificationReport verify_block_decomposition(std::uint64_t n);
VerificationReport verify_block_decomposition_sweep(std::uint64_t max_n);

// n K_n = sum_{k=1..n} D_k, summed directly, for all n <= max_n.
VerificationReport verify_dirichlet_sum(std::uint64_t max_n);

// int D_n = int K_n = 1 for 1 <= n <= max_n.
VerificationReport verify_integrals(std::uint64_t max_n);

enum class LowerBound {
    gap_pair,      // n|K_n| >= 2^{2t_i-2} on gap_pair_region(t_i)
    edge_pair,     // n|K_n| >= 2^{2l_i-4} on edge_pair_region(l_i)
    relaxed_pair,  // both regions with exponents 2t_i-5 / 2l_i-5
};

// Exact min over each block's region at nominal resolution |n| + 4 (values
// depend only on bits 0..|n|, so the scan covers that quotient).  Also
// records, without asserting, whether the stronger exponent 2t_i-1 holds on
// every gap_pair region (stronger_gap_bound below).
struct LowerBoundResult {
    VerificationReport report;
    bool stronger_gap_bound = false;
};
LowerBoundResult check_lower_bound(std::uint64_t n, LowerBound which);
LowerBoundResult check_lower_bound_sweep(std::uint64_t lo, std::uint64_t hi, LowerBound which);

// Minimal admissible c with |n K_n| <= c * RHS(n) pointwise (RHS as in the
// header comment); where RHS = 0 the check insists n K_n = 0.  Pass iff the
// minimal c is <= frozen_c (pass unconditionally when frozen_c is absent,
// calibration mode).  Nominal resolution |n| + 2.
VerificationReport check_upper_bound(std::uint64_t n, const std::optional<Rational>& frozen_c);
VerificationReport check_upper_bound_sweep(std::uint64_t lo, std::uint64_t hi,
                                           const std::optional<Rational>& frozen_c);

// Largest ratio of int_{I_M} |K_n(x+t)| dmu(t) to n * 2^{k+l-M} over the
// cover pieces of the complement of I_M (tails use l = M); requires n >= 2^M.
// The integral is computed exactly; the report's constant is the max ratio.
VerificationReport tail_integral_ratio(std::uint64_t n, unsigned M);
VerificationReport tail_integral_sweep(unsigned min_M, unsigned max_M, unsigned extra_doublings,
                                       const std::optional<Rational>& frozen_c);

// Exact value of int_{I_M} |K_n(x+t)| dmu(t) for one coset x given at
// resolution M (the integral depends only on those bits).
Rational tail_integral_value(std::uint64_t n, unsigned M, std::uint64_t x);

}  // namespace wf
