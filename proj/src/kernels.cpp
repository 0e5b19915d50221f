#include "wf/kernels.hpp"

#include "wf/kernel_eval.hpp"
#include "wf/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace wf {

namespace {

void check_index_resolution(std::uint64_t n, unsigned M, const char* what) {
    detail::check_resolution(M);
    if (n > (std::uint64_t{1} << M))
        throw std::domain_error(std::string(what) + ": index " + std::to_string(n) +
                                " exceeds resolution 2^" + std::to_string(M));
}

void check_positive(std::uint64_t n, const char* what) {
    if (n == 0) throw std::domain_error(std::string(what) + ": index must be positive");
}

// Largest set bit position; callers guarantee n >= 1.
unsigned top_bit_of(std::uint64_t n) { return 63 - static_cast<unsigned>(std::countl_zero(n)); }

}  // namespace

GridFunction dirichlet(std::uint64_t n, unsigned M) {
    check_index_resolution(n, M, "dirichlet");
    GridFunction f(M);
    if (n == 0) return f;
    for (std::size_t x = 0; x < f.size(); ++x) {
        // Peel the top set bit b: D_n = D_{2^b} + w_{2^b} D_{n mod 2^b}.
        std::int64_t acc = 0, sign = 1;
        std::uint64_t rest = n;
        while (rest != 0) {
            const unsigned b = top_bit_of(rest);
            rest &= ~(std::uint64_t{1} << b);
            acc += sign * dirichlet_pow2_value(b, x);
            if ((x >> b) & 1) sign = -sign;
        }
        f[x] = Rational(static_cast<long>(acc));
    }
    return f;
}

GridFunction fejer(std::uint64_t n, unsigned M) {
    check_positive(n, "fejer");
    check_index_resolution(n, M, "fejer");
    CoeffVector c(M);
    for (std::uint64_t j = 0; j < n && j < c.size(); ++j)
        c[j] = make_rational(mpz_class(static_cast<unsigned long>(n - j)),
                             mpz_class(static_cast<unsigned long>(n)));
    return inverse_fwht(c);
}

std::vector<std::int64_t> fejer_times_n_grid(std::uint64_t n, unsigned M) {
    check_positive(n, "fejer_times_n_grid");
    detail::check_resolution(M);
    std::vector<std::int64_t> v(std::size_t{1} << M);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = fejer_scaled_value(n, x);
    return v;
}

GridFunction partial_sum(const GridFunction& f, std::uint64_t n) {
    check_index_resolution(n, f.resolution(), "partial_sum");
    CoeffVector c = fwht(f);
    for (std::uint64_t j = n; j < c.size(); ++j) c[j] = 0;
    return inverse_fwht(c);
}

GridFunction fejer_mean(const GridFunction& f, std::uint64_t n) {
    check_positive(n, "fejer_mean");
    check_index_resolution(n, f.resolution(), "fejer_mean");
    CoeffVector c = fwht(f);
    const Rational inv_n = make_rational(1, static_cast<long>(n));
    for (std::uint64_t j = 0; j < c.size(); ++j)
        c[j] *= (j < n) ? Rational(static_cast<long>(n - j)) * inv_n : Rational(0);
    return inverse_fwht(c);
}

GridFunction fejer_mean_convolution(const GridFunction& f, std::uint64_t n) {
    check_positive(n, "fejer_mean_convolution");
    check_index_resolution(n, f.resolution(), "fejer_mean_convolution");
    return convolve(f, fejer(n, f.resolution()));
}

std::vector<std::uint64_t> TestRegion::cosets(unsigned M) const {
    if (M < fixed_bits)
        throw std::domain_error("TestRegion::cosets: resolution " + std::to_string(M) +
                                " below the " + std::to_string(fixed_bits) + " constrained bits");
    const std::uint64_t mask = (fixed_bits == 0) ? 0 : ((std::uint64_t{1} << fixed_bits) - 1);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << M); ++i)
        if ((i & mask) == (base & mask)) out.push_back(i);
    return out;
}

TestRegion edge_pair_region(unsigned l) {
    TestRegion r;
    r.kind = TestRegion::Kind::edge_pair;
    r.anchor = l;
    if (l == 0) {
        r.base = 0b11;
        r.fixed_bits = 2;
        r.measure = pow2(-2);
    } else {
        r.base = (std::uint64_t{1} << (l - 1)) | (std::uint64_t{1} << l);
        r.fixed_bits = l + 1;
        r.measure = pow2(-static_cast<int>(l + 1));
    }
    return r;
}

TestRegion gap_pair_region(unsigned t) {
    TestRegion r;
    r.kind = TestRegion::Kind::gap_pair;
    r.anchor = t;
    r.base = (std::uint64_t{1} << (t + 1)) | (std::uint64_t{1} << (t + 2));
    r.fixed_bits = t + 3;
    r.measure = pow2(-static_cast<int>(t + 3));
    return r;
}

// --- equality sweeps --------------------------------------------------------

namespace {

// Track the largest |difference| between two exact grids.
void track_difference(VerificationReport& rep, const GridFunction& lhs, const GridFunction& rhs,
                      std::uint64_t n) {
    for (std::size_t x = 0; x < lhs.size(); ++x) {
        Rational d = lhs[x] - rhs[x];
        if (d < 0) d = -d;
        if (!rep.worst_ratio_exact || d > *rep.worst_ratio_exact) {
            rep.worst_ratio_exact = d;
            rep.witness_n = n;
            rep.witness_coset = x;
        }
        if (d != 0) rep.pass = false;
    }
}

}  // namespace

VerificationReport verify_pow2_dirichlet(unsigned max_exponent) {
    const unsigned M = max_exponent + 2;
    detail::check_resolution(M);
    VerificationReport rep;
    rep.check = "pow2_dirichlet";
    rep.range_lo = 1;
    rep.range_hi = std::uint64_t{1} << max_exponent;
    rep.resolution = M;
    rep.pass = true;
    for (unsigned m = 0; m <= max_exponent; ++m) {
        GridFunction closed = GridFunction::interval_indicator(M, m);
        closed *= pow2(static_cast<int>(m));
        track_difference(rep, dirichlet(std::uint64_t{1} << m, M), closed, std::uint64_t{1} << m);
    }
    if (!rep.worst_ratio_exact) rep.worst_ratio_exact = Rational(0);
    return rep;
}

VerificationReport verify_pow2_fejer(unsigned m, unsigned M) {
    detail::check_resolution(M);
    if (m >= M) throw std::domain_error("verify_pow2_fejer: exponent must be below the resolution");
    VerificationReport rep;
    rep.check = "pow2_fejer";
    rep.range_lo = rep.range_hi = std::uint64_t{1} << m;
    rep.resolution = M;
    rep.pass = true;
    // Three-case closed form, assembled directly from the case analysis.
    GridFunction closed(M);
    const std::uint64_t low_mask = (std::uint64_t{1} << m) - 1;
    for (std::size_t x = 0; x < closed.size(); ++x) {
        const std::uint64_t low = x & low_mask;
        if (low == 0)
            closed[x] = make_rational((std::int64_t{1} << m) + 1, 2);
        else if (std::has_single_bit(low))
            closed[x] = pow2(static_cast<int>(std::countr_zero(low)) - 1);
        else
            closed[x] = 0;
    }
    track_difference(rep, fejer(std::uint64_t{1} << m, M), closed, std::uint64_t{1} << m);
    if (!rep.worst_ratio_exact) rep.worst_ratio_exact = Rational(0);
    return rep;
}

VerificationReport verify_pow2_fejer_sweep(unsigned max_resolution) {
    VerificationReport rep;
    rep.check = "pow2_fejer";
    rep.range_lo = 1;
    rep.range_hi = std::uint64_t{1} << (max_resolution - 1);
    rep.resolution = max_resolution;
    rep.pass = true;
    rep.worst_ratio_exact = Rational(0);
    for (unsigned M = 1; M <= max_resolution; ++M)
        for (unsigned m = 0; m < M; ++m) {
            VerificationReport one = verify_pow2_fejer(m, M);
            if (*one.worst_ratio_exact > *rep.worst_ratio_exact) {
                rep.worst_ratio_exact = one.worst_ratio_exact;
                rep.witness_n = one.witness_n;
                rep.witness_coset = one.witness_coset;
            }
            rep.pass = rep.pass && one.pass;
        }
    return rep;
}

VerificationReport verify_block_decomposition(std::uint64_t n) {
    check_positive(n, "verify_block_decomposition");
    const unsigned M = top_bit_of(n) + 2;
    VerificationReport rep;
    rep.check = "block_decomposition";
    rep.range_lo = rep.range_hi = n;
    rep.resolution = M;
    rep.pass = true;

    GridFunction lhs = fejer(n, M);
    lhs *= Rational(static_cast<long>(n));

    GridFunction rhs(M);
    GridFunction sign = GridFunction::constant(M, 1);
    std::uint64_t rest = n;
    while (rest != 0) {
        const unsigned b = top_bit_of(rest);
        rest &= ~(std::uint64_t{1} << b);  // n mod 2^b
        GridFunction term = fejer(std::uint64_t{1} << b, M);
        term *= pow2(static_cast<int>(b));
        if (rest != 0) {
            GridFunction tail_term = dirichlet(std::uint64_t{1} << b, M);
            tail_term *= Rational(static_cast<long>(rest));
            term += tail_term;
        }
        for (std::size_t x = 0; x < term.size(); ++x) term[x] *= sign[x];
        rhs += term;
        GridFunction w = walsh(std::uint64_t{1} << b, M);
        for (std::size_t x = 0; x < sign.size(); ++x) sign[x] *= w[x];
    }
    track_difference(rep, lhs, rhs, n);
    if (!rep.worst_ratio_exact) rep.worst_ratio_exact = Rational(0);
    return rep;
}

VerificationReport verify_block_decomposition_sweep(std::uint64_t max_n) {
    check_positive(max_n, "verify_block_decomposition_sweep");
    auto chunk = [](std::uint64_t lo, std::uint64_t hi) {
        VerificationReport rep;
        rep.check = "block_decomposition";
        rep.range_lo = lo;
        rep.range_hi = hi;
        rep.pass = true;
        rep.worst_ratio_exact = Rational(0);
        for (std::uint64_t n = lo; n <= hi; ++n) {
            VerificationReport one = verify_block_decomposition(n);
            rep.resolution = std::max(rep.resolution, one.resolution);
            if (*one.worst_ratio_exact > *rep.worst_ratio_exact) {
                rep.worst_ratio_exact = one.worst_ratio_exact;
                rep.witness_n = one.witness_n;
                rep.witness_coset = one.witness_coset;
            }
            rep.pass = rep.pass && one.pass;
        }
        return rep;
    };
    auto merge = [](VerificationReport a, const VerificationReport& b) {
        VerificationReport m = merge_worst(std::move(a), b);
        return m;
    };
    return parallel_reduce_range<VerificationReport>(1, max_n, chunk, merge);
}

VerificationReport verify_dirichlet_sum(std::uint64_t max_n) {
    check_positive(max_n, "verify_dirichlet_sum");
    const unsigned M = top_bit_of(max_n) + 1;
    VerificationReport rep;
    rep.check = "dirichlet_sum";
    rep.range_lo = 1;
    rep.range_hi = max_n;
    rep.resolution = M;
    rep.pass = true;
    rep.worst_ratio_exact = Rational(0);
    GridFunction running(M);  // sum_{k<=n} D_k, built incrementally
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        running += dirichlet(n, M);
        const auto scaled = fejer_times_n_grid(n, M);
        GridFunction closed(M);
        for (std::size_t x = 0; x < closed.size(); ++x)
            closed[x] = Rational(static_cast<long>(scaled[x]));
        track_difference(rep, closed, running, n);
    }
    return rep;
}

VerificationReport verify_integrals(std::uint64_t max_n) {
    check_positive(max_n, "verify_integrals");
    const unsigned M = top_bit_of(max_n) + 1;
    VerificationReport rep;
    rep.check = "unit_integrals";
    rep.range_lo = 1;
    rep.range_hi = max_n;
    rep.resolution = M;
    rep.pass = true;
    rep.worst_ratio_exact = Rational(0);
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        for (const Rational& v : {dirichlet(n, M).integral(), fejer(n, M).integral()}) {
            Rational d = v - 1;
            if (d < 0) d = -d;
            if (d > *rep.worst_ratio_exact) {
                rep.worst_ratio_exact = d;
                rep.witness_n = n;
                rep.witness_coset = 0;
            }
            if (d != 0) rep.pass = false;
        }
    }
    return rep;
}

// --- lower bounds ------------------------------------------------------------

namespace {

struct RegionBound {
    TestRegion region;
    int exponent;  // claimed bound 2^exponent
};

std::vector<RegionBound> bounds_for(const DyadicIndex& idx, LowerBound which) {
    std::vector<RegionBound> out;
    for (const Block& blk : idx.blocks) {
        const int t = static_cast<int>(blk.high);
        const int l = static_cast<int>(blk.low);
        switch (which) {
            case LowerBound::gap_pair:
                out.push_back({gap_pair_region(blk.high), 2 * t - 2});
                break;
            case LowerBound::edge_pair:
                out.push_back({edge_pair_region(blk.low), 2 * l - 4});
                break;
            case LowerBound::relaxed_pair:
                out.push_back({gap_pair_region(blk.high), 2 * t - 5});
                out.push_back({edge_pair_region(blk.low), 2 * l - 5});
                break;
        }
    }
    return out;
}

// Min of |table[x]| over the region, where table holds values depending only
// on the low R bits of x; returns the minimizing coset as well.
std::pair<std::int64_t, std::uint64_t> region_min(const std::vector<std::int64_t>& table,
                                                  unsigned R, const TestRegion& region) {
    const std::uint64_t mask = (std::uint64_t{1} << R) - 1;
    const std::uint64_t base = region.base & mask;
    std::int64_t best = -1;
    std::uint64_t best_x = base;
    if (region.fixed_bits >= R) {
        best = std::abs(table[base]);
        best_x = region.base;
    } else {
        for (std::uint64_t h = 0; h < (std::uint64_t{1} << (R - region.fixed_bits)); ++h) {
            const std::uint64_t x = base | (h << region.fixed_bits);
            const std::int64_t v = std::abs(table[x]);
            if (best < 0 || v < best) {
                best = v;
                best_x = x;
            }
        }
    }
    return {best, best_x};
}

const char* lower_bound_name(LowerBound which) {
    switch (which) {
        case LowerBound::gap_pair: return "lower_bound_gap_pair";
        case LowerBound::edge_pair: return "lower_bound_edge_pair";
        case LowerBound::relaxed_pair: return "lower_bound_relaxed";
    }
    return "lower_bound";
}

}  // namespace

LowerBoundResult check_lower_bound(std::uint64_t n, LowerBound which) {
    check_positive(n, "check_lower_bound");
    const DyadicIndex idx = decompose(n);
    const unsigned R = idx.top + 1;  // n K_n depends only on bits 0..top
    const auto table = fejer_times_n_grid(n, R);

    LowerBoundResult res;
    res.report.check = lower_bound_name(which);
    res.report.range_lo = res.report.range_hi = n;
    res.report.resolution = idx.top + 4;
    res.report.pass = true;
    res.stronger_gap_bound = true;

    for (const RegionBound& rb : bounds_for(idx, which)) {
        const auto [mn, at] = region_min(table, R, rb.region);
        const Rational ratio = Rational(static_cast<long>(mn)) * pow2(-rb.exponent);
        if (!res.report.worst_ratio_exact || ratio < *res.report.worst_ratio_exact) {
            res.report.worst_ratio_exact = ratio;
            res.report.witness_n = n;
            res.report.witness_coset = at;
        }
        if (ratio < 1) res.report.pass = false;
        if (rb.region.kind == TestRegion::Kind::gap_pair &&
            Rational(static_cast<long>(mn)) < pow2(2 * static_cast<int>(rb.region.anchor) - 1))
            res.stronger_gap_bound = false;
    }
    if (!res.report.worst_ratio_exact) res.report.worst_ratio_exact = Rational(1);
    return res;
}

LowerBoundResult check_lower_bound_sweep(std::uint64_t lo, std::uint64_t hi, LowerBound which) {
    check_positive(lo, "check_lower_bound_sweep");
    auto chunk = [which](std::uint64_t a, std::uint64_t b) {
        LowerBoundResult acc;
        acc.report.check = lower_bound_name(which);
        acc.report.range_lo = a;
        acc.report.range_hi = b;
        acc.report.pass = true;
        acc.stronger_gap_bound = true;
        for (std::uint64_t n = a; n <= b; ++n) {
            LowerBoundResult one = check_lower_bound(n, which);
            acc.report.resolution = std::max(acc.report.resolution, one.report.resolution);
            if (!acc.report.worst_ratio_exact ||
                (one.report.worst_ratio_exact &&
                 *one.report.worst_ratio_exact < *acc.report.worst_ratio_exact)) {
                acc.report.worst_ratio_exact = one.report.worst_ratio_exact;
                acc.report.witness_n = one.report.witness_n;
                acc.report.witness_coset = one.report.witness_coset;
            }
            acc.report.pass = acc.report.pass && one.report.pass;
            acc.stronger_gap_bound = acc.stronger_gap_bound && one.stronger_gap_bound;
        }
        return acc;
    };
    auto merge = [](LowerBoundResult a, const LowerBoundResult& b) {
        if (!a.report.worst_ratio_exact ||
            (b.report.worst_ratio_exact && *b.report.worst_ratio_exact < *a.report.worst_ratio_exact)) {
            a.report.worst_ratio_exact = b.report.worst_ratio_exact;
            a.report.witness_n = b.report.witness_n;
            a.report.witness_coset = b.report.witness_coset;
        }
        a.report.range_lo = std::min(a.report.range_lo, b.report.range_lo);
        a.report.range_hi = std::max(a.report.range_hi, b.report.range_hi);
        a.report.resolution = std::max(a.report.resolution, b.report.resolution);
        a.report.pass = a.report.pass && b.report.pass;
        a.stronger_gap_bound = a.stronger_gap_bound && b.stronger_gap_bound;
        return a;
    };
    return parallel_reduce_range<LowerBoundResult>(lo, hi, chunk, merge);
}

// --- upper bound -------------------------------------------------------------

namespace {

// RHS of the block-kernel domination at one coset; fits int64 for n < 2^25.
std::int64_t upper_bound_rhs(const DyadicIndex& idx, std::uint64_t x) {
    std::int64_t rhs = 0;
    for (const Block& blk : idx.blocks) {
        rhs += fejer_pow2_scaled_value(blk.low, x) + fejer_pow2_scaled_value(blk.high, x);
        std::int64_t dsum = 0;
        for (unsigned k = blk.low; k <= blk.high; ++k) dsum += dirichlet_pow2_value(k, x);
        rhs += (std::int64_t{1} << blk.low) * dsum;
    }
    return rhs;
}

}  // namespace

VerificationReport check_upper_bound(std::uint64_t n, const std::optional<Rational>& frozen_c) {
    return check_upper_bound_sweep(n, n, frozen_c);
}

VerificationReport check_upper_bound_sweep(std::uint64_t lo, std::uint64_t hi,
                                           const std::optional<Rational>& frozen_c) {
    check_positive(lo, "check_upper_bound_sweep");
    auto chunk = [](std::uint64_t a, std::uint64_t b) {
        VerificationReport rep;
        rep.check = "upper_bound_blocks";
        rep.range_lo = a;
        rep.range_hi = b;
        rep.pass = true;
        std::int64_t best_num = 0, best_den = 1;  // max LHS/RHS so far
        for (std::uint64_t n = a; n <= b; ++n) {
            const DyadicIndex idx = decompose(n);
            const unsigned R = idx.top + 1;
            rep.resolution = std::max(rep.resolution, idx.top + 2);
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << R); ++x) {
                const std::int64_t lhs = std::abs(fejer_scaled_value(n, x));
                const std::int64_t rhs = upper_bound_rhs(idx, x);
                if (rhs == 0) {
                    if (lhs != 0) {  // domination impossible for any constant
                        rep.pass = false;
                        rep.witness_n = n;
                        rep.witness_coset = x;
                        rep.worst_ratio_exact.reset();
                        rep.worst_ratio_float = std::numeric_limits<double>::infinity();
                        return rep;
                    }
                    continue;
                }
                if (static_cast<__int128>(lhs) * best_den > static_cast<__int128>(best_num) * rhs) {
                    best_num = lhs;
                    best_den = rhs;
                    rep.witness_n = n;
                    rep.witness_coset = x;
                }
            }
        }
        rep.worst_ratio_exact = make_rational(static_cast<long>(best_num), static_cast<long>(best_den));
        rep.constant = rep.worst_ratio_exact;
        return rep;
    };
    VerificationReport rep =
        parallel_reduce_range<VerificationReport>(lo, hi, chunk, [](VerificationReport a, const VerificationReport& b) {
            return merge_worst(std::move(a), b);
        });
    if (frozen_c && rep.worst_ratio_exact && *rep.worst_ratio_exact > *frozen_c) rep.pass = false;
    if (!frozen_c) rep.check += "_calibration";
    return rep;
}

// --- tail integral -----------------------------------------------------------

Rational tail_integral_value(std::uint64_t n, unsigned M, std::uint64_t x) {
    check_positive(n, "tail_integral_value");
    detail::check_resolution(M);
    const unsigned R = std::max(top_bit_of(n) + 1, M);
    const std::uint64_t x_low = x & ((std::uint64_t{1} << M) - 1);
    mpz_class acc(0);
    for (std::uint64_t g = 0; g < (std::uint64_t{1} << (R - M)); ++g)
        acc += static_cast<long>(std::abs(fejer_scaled_value(n, x_low | (g << M))));
    return make_rational(acc, mpz_class(static_cast<unsigned long>(n))) * pow2(-static_cast<int>(R));
}

VerificationReport tail_integral_ratio(std::uint64_t n, unsigned M) {
    check_positive(n, "tail_integral_ratio");
    detail::check_resolution(M);
    if (n < (std::uint64_t{1} << M))
        throw std::domain_error("tail_integral_ratio: index below 2^resolution");
    VerificationReport rep;
    rep.check = "tail_integral";
    rep.range_lo = rep.range_hi = n;
    rep.resolution = M;
    rep.pass = true;
    rep.worst_ratio_exact = Rational(0);
    for (const CoverPiece& piece : complement_cover(M)) {
        const Rational scale =
            pow2(static_cast<int>(M) - static_cast<int>(piece.k) - static_cast<int>(piece.l)) /
            Rational(static_cast<long>(n));
        for (std::uint64_t x : piece.cosets) {
            const Rational ratio = tail_integral_value(n, M, x) * scale;
            if (ratio > *rep.worst_ratio_exact) {
                rep.worst_ratio_exact = ratio;
                rep.witness_n = n;
                rep.witness_coset = x;
            }
        }
    }
    rep.constant = rep.worst_ratio_exact;
    return rep;
}

VerificationReport tail_integral_sweep(unsigned min_M, unsigned max_M, unsigned extra_doublings,
                                       const std::optional<Rational>& frozen_c) {
    if (min_M == 0 || min_M > max_M)
        throw std::domain_error("tail_integral_sweep: bad resolution range");
    VerificationReport rep;
    rep.check = "tail_integral";
    rep.range_lo = std::uint64_t{1} << min_M;
    rep.range_hi = std::uint64_t{1} << (max_M + 2 + extra_doublings);
    rep.resolution = max_M;
    rep.pass = true;
    rep.worst_ratio_exact = Rational(0);
    for (unsigned M = min_M; M <= max_M; ++M) {
        for (std::uint64_t n = std::uint64_t{1} << M; n <= (std::uint64_t{1} << (M + 2 + extra_doublings)); ++n) {
            VerificationReport one = tail_integral_ratio(n, M);
            if (*one.worst_ratio_exact > *rep.worst_ratio_exact) {
                rep.worst_ratio_exact = one.worst_ratio_exact;
                rep.witness_n = one.witness_n;
                rep.witness_coset = one.witness_coset;
            }
        }
    }
    rep.constant = rep.worst_ratio_exact;
    if (frozen_c && *rep.worst_ratio_exact > *frozen_c) rep.pass = false;
    else if (!frozen_c) rep.check += "_calibration";
    return rep;
}

}  // namespace wf
