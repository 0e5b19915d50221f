// Acceptance suite: seven independent criteria, one verdict line each.
//
//   acceptance                 run all seven
//   acceptance --criterion N   run a single one (ctest runs them this way)
//
// Exit code 0 iff every requested criterion passes.  Detail lines are
// indented under each verdict; failures keep running so the full picture is
// always printed.

#include "wf/dyadic_index.hpp"
#include "wf/frozen.hpp"
#include "wf/grid.hpp"
#include "wf/hardy.hpp"
#include "wf/kernels.hpp"
#include "wf/maxop.hpp"
#include "wf/rational.hpp"
#include "wf/report.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace wf;

int checks_failed = 0;

void detail(bool ok, const std::string& text) {
    if (!ok) ++checks_failed;
    std::cout << "  " << (ok ? "ok  " : "FAIL") << "  " << text << "\n";
}

std::string f17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string ratio_text(const VerificationReport& r) {
    if (r.worst_ratio_exact) return to_string(*r.worst_ratio_exact);
    if (r.worst_ratio_float) return f17(*r.worst_ratio_float);
    return "-";
}

void report_detail(const VerificationReport& r, const std::string& label) {
    detail(r.pass, label + ": worst ratio " + ratio_text(r) + ", witness (n=" +
                       std::to_string(r.witness_n) + ", coset=" +
                       std::to_string(r.witness_coset) + ")");
}

GridFunction random_grid(std::uint64_t seed, unsigned M, bool pow2_denominators) {
    std::mt19937_64 gen(seed);
    std::vector<Rational> v(std::size_t(1) << M);
    for (auto& x : v) {
        const long num = long(gen() % 201) - 100;
        const long den = pow2_denominators ? (1L << (gen() % 4)) : long(gen() % 9) + 1;
        x = make_rational(num, den);
    }
    return GridFunction(M, std::move(v));
}

// 1. Exact-identity suite, bit-exact, under two minutes single-threaded.
bool criterion1() {
    const char* saved = std::getenv("FEJER_THREADS");
    setenv("FEJER_THREADS", "1", 1);
    const auto start = std::chrono::steady_clock::now();

    report_detail(verify_pow2_dirichlet(12), "power-of-two Dirichlet closed form, exponents <= 12");
    report_detail(verify_pow2_fejer_sweep(12), "power-of-two Fejer closed form, n < M <= 12");
    report_detail(verify_block_decomposition_sweep(1024), "block decomposition of n K_n, n <= 1024");
    report_detail(verify_dirichlet_sum(512), "n K_n = sum D_k, n <= 512");
    report_detail(verify_integrals(1024), "unit integrals of D_n and K_n, n <= 1024");

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    detail(elapsed < 120.0, "single-threaded runtime " + f17(elapsed) + "s (budget 120s)");

    if (saved)
        setenv("FEJER_THREADS", saved, 1);
    else
        unsetenv("FEJER_THREADS");
    return true;
}

// 2. Pointwise lower bounds on the block test regions, every n <= 4096, exact.
bool criterion2() {
    const LowerBoundResult gap = check_lower_bound_sweep(1, 4096, LowerBound::gap_pair);
    report_detail(gap.report, "gap regions: n|K_n| >= 2^{2t-2}");
    std::cout << "        stronger exponent 2t-1 held on all gap regions: "
              << (gap.stronger_gap_bound ? "yes" : "no") << "\n";

    const LowerBoundResult edge = check_lower_bound_sweep(1, 4096, LowerBound::edge_pair);
    report_detail(edge.report, "edge regions: n|K_n| >= 2^{2l-4}");

    const LowerBoundResult relaxed = check_lower_bound_sweep(1, 4096, LowerBound::relaxed_pair);
    report_detail(relaxed.report, "relaxed exponents: >= 2^{2t-5} and 2^{2l-5}");

    if (!edge.report.pass || !relaxed.report.pass)
        std::cout << "        note: edge regions attached to a bottom endpoint l = 0 contain an\n"
                     "        exact kernel zero (first witness: 3 K_3 = 0 on the coset with low\n"
                     "        bits 11), so any positive bound fails there; the gap-region bound\n"
                     "        is unaffected.\n";
    return true;
}

// 3. Frozen-constant upper bounds: freezing protocol, doubled sweeps, stability.
bool criterion3() {
    const VerificationReport cal1 = check_upper_bound_sweep(1, 1024, std::nullopt);
    const Rational c1 = *cal1.constant;
    detail(frozen::kUpperBoundConstant == 2 * c1,
           "block-kernel bound: frozen constant " + to_string(frozen::kUpperBoundConstant) +
               " equals 2x the minimal calibrated " + to_string(c1));
    const VerificationReport doubled = check_upper_bound_sweep(1, 2048, frozen::kUpperBoundConstant);
    report_detail(doubled, "block-kernel bound holds with the frozen constant, n <= 2048");
    const Rational c2 = *doubled.constant;
    detail(c2 <= c1, "stability: minimal constant " + to_string(c2) +
                         " on the doubled sweep does not exceed " + to_string(c1));

    const VerificationReport tcal = tail_integral_sweep(3, 5, 0, std::nullopt);
    const Rational t1 = *tcal.constant;
    detail(frozen::kTailIntegralConstant == 2 * t1,
           "tail-integral bound: frozen constant " + to_string(frozen::kTailIntegralConstant) +
               " equals 2x the minimal calibrated " + to_string(t1));
    const VerificationReport tdoubled = tail_integral_sweep(3, 5, 1, frozen::kTailIntegralConstant);
    report_detail(tdoubled, "tail-integral bound holds with the frozen constant, doubled n range");
    const Rational t2 = *tdoubled.constant;
    detail(t2 <= t1, "stability: minimal constant " + to_string(t2) +
                         " on the doubled sweep does not exceed " + to_string(t1));
    return true;
}

// 4. Transform oracle: dual-route Fejer means, round trip, Parseval, all exact.
bool criterion4() {
    const unsigned M = 7;
    bool dual = true, round_trip = true;
    std::uint64_t dual_witness = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const GridFunction f = random_grid(seed, M, seed % 2 == 0);
        if (!(inverse_fwht(fwht(f)) == f)) round_trip = false;
        for (std::uint64_t n = 1; n <= 64; ++n)
            if (!(fejer_mean(f, n) == fejer_mean_convolution(f, n))) {
                dual = false;
                dual_witness = seed;
            }
    }
    detail(dual, dual ? "multiplier and convolution sigma_n agree exactly: 200 functions, n <= 64"
                      : "dual-route sigma_n mismatch at seed " + std::to_string(dual_witness));
    detail(round_trip, "transform round trip exact for all 200 functions");

    bool parseval = true;
    for (unsigned m = 0; m <= 10; ++m) {
        const GridFunction f = random_grid(500 + m, m, false);
        const CoeffVector c = fwht(f);
        Rational lhs = 0, rhs = 0;
        for (std::uint64_t i = 0; i < f.size(); ++i) lhs += f[i] * f[i];
        lhs *= pow2(-int(m));
        for (std::uint64_t k = 0; k < c.size(); ++k) rhs += c[k] * c[k];
        if (lhs != rhs) parseval = false;
    }
    detail(parseval, "Parseval identity exact at every resolution M <= 10");
    return true;
}

// 5. Bounded families: endpoint-set law and the frozen atom-statistic bound.
bool criterion5() {
    struct Entry {
        const char* name;
        double frozen;
    };
    const Entry entries[] = {{"powers", frozen::kAtomStatisticPowers},
                             {"powers_plus_one", frozen::kAtomStatisticPowersPlusOne},
                             {"powers_plus_halfpower", frozen::kAtomStatisticPowersPlusHalfpower}};
    for (const Entry& e : entries) {
        const IndexFamily fam = family_from_name(e.name);
        bool card_ok = true;
        std::size_t seen_max = 0;
        for (unsigned s = 1; s <= 16; ++s) {
            const std::size_t card = family_block_set(fam, s).cardinality;
            seen_max = std::max(seen_max, card);
            if (card > 3) card_ok = false;
        }
        detail(card_ok, std::string(e.name) + ": |A_s| <= 3 for all s <= 16 (max seen " +
                            std::to_string(seen_max) + ")");

        double worst = 0;
        bool bounded = true;
        for (unsigned level = 4; level <= 8; ++level) {
            const BoundednessReport rep =
                boundedness_sweep(fam, level, level + 2, 100, level, e.frozen);
            worst = std::max(worst, rep.max_statistic);
            if (!rep.pass && rep.max_statistic > e.frozen + 1e-9) bounded = false;
        }
        detail(bounded, std::string(e.name) + ": statistic over 100 seeds, M in 4..8, max " +
                            f17(worst) + " below frozen " + f17(e.frozen));
    }
    return true;
}

// 6. Unbounded families: endpoint law, per-region bounds, exact decomposition
//    identities, and the regression-locked growth table.
bool criterion6() {
    for (const char* name : {"alpha", "beta"}) {
        const IndexFamily fam = family_from_name(name);
        bool law = true;
        unsigned first_bad = 0;
        for (unsigned s = 1; s <= 16; ++s)
            if (family_block_set(fam, s).cardinality != s + 1 && !first_bad) {
                law = false;
                first_bad = s;
            }
        std::string text = std::string(name) + ": |A_s| = s+1 for all s <= 16";
        if (!law) {
            const std::size_t got = family_block_set(fam, first_bad).cardinality;
            text += " -- first failure s = " + std::to_string(first_bad) + " with |A_s| = " +
                    std::to_string(got);
        }
        detail(law, text);
        if (!law)
            std::cout << "        note: this family's block endpoints are {0..s-2} and {s};\n"
                         "        position s-1 is never an endpoint, so the count is s, not s+1.\n"
                         "        The growth experiment below still applies (|A_s| -> infinity).\n";
    }

    // flat spectrum blocks (exact), for both selected counterexample specs
    for (const char* name : {"alpha", "beta"}) {
        const CounterexampleSpec spec = select_counterexample(family_from_name(name), 8);
        const Martingale F = assemble_martingale(spec, 9);
        const CoeffVector c = fwht(F.densest());
        bool flat = true;
        for (std::uint64_t j = 0; j < c.size() && flat; ++j) {
            Rational expect = 0;
            for (std::size_t k = 0; k < spec.size(); ++k) {
                const std::uint64_t lo = std::uint64_t(1) << spec.scales[k];
                if (j >= lo && j < 2 * lo) expect = pow2(int(spec.scales[k])) * spec.lambdas[k];
            }
            if (c[j] != expect) flat = false;
        }
        detail(flat, std::string(name) +
                         ": spectrum of the assembled martingale is flat on the scale blocks");
    }

    // decomposition identity, every admissible index of the beta spec at scale 5
    {
        const CounterexampleSpec spec = select_counterexample(family_from_name("beta"), 5);
        const Martingale F = assemble_martingale(spec, 6);
        bool exact = true;
        for (std::size_t k = 0; k < spec.size() && exact; ++k) {
            const std::uint64_t lo = std::uint64_t(1) << spec.scales[k];
            for (std::uint64_t a = lo; a < 2 * lo && exact; ++a) {
                const SigmaDecomposition d = sigma_decomposition(F, spec, k, a);
                if (!(d.mean_term + d.partial_term + d.kernel_term == fejer_mean(F.densest(), a)))
                    exact = false;
            }
        }
        detail(exact, "three-term decomposition of sigma_alpha is exact at every admissible index");
    }

    // per-region lower bounds and the growth table, regression-locked
    for (const char* name : {"alpha", "beta"}) {
        const BlowupReport rep =
            blowup_experiment(family_from_name(name), frozen::kBlowupMinScale, frozen::kBlowupMaxScale);
        double min_margin = rep.rows.front().min_region_margin;
        for (const BlowupRow& row : rep.rows) min_margin = std::min(min_margin, row.min_region_margin);
        detail(rep.pass, std::string(name) + ": every region integral >= its 2^{-5}/2^{-7} bound " +
                             "(worst margin " + f17(min_margin) + ")");

        const double* locked = std::string(name) == "alpha" ? frozen::kBlowupGrowthAlpha
                                                            : frozen::kBlowupGrowthBeta;
        bool lock_ok = true;
        bool growing = true;
        std::cout << "        T(s) for " << name << ":";
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            std::cout << " " << f17(rep.rows[i].t_value);
            if (std::abs(rep.rows[i].t_value - locked[i]) > 1e-9) lock_ok = false;
            if (i && rep.rows[i].t_value <= rep.rows[i - 1].t_value) growing = false;
        }
        std::cout << "\n";
        detail(lock_ok, std::string(name) + ": growth table matches the regression lock (tol 1e-9)");
        detail(growing, std::string(name) + ": T(s) strictly increasing across the swept scales");
    }
    return true;
}

// 7. Structural combinatorics, exhaustive at full acceptance scale.
bool criterion7() {
    bool variation_ok = variation(0) == 0;
    bool rho_ok = true;
    bool blocks_ok = true;
    for (std::uint64_t n = 1; n <= std::uint64_t(1) << 16; ++n) {
        const DyadicIndex d = decompose(n);
        // n_0 + sum_{k>=1} |n_k - n_{k-1}|, including the final 1 -> 0 step
        unsigned transitions = n & 1;
        for (unsigned k = 1; k <= d.top + 1; ++k)
            transitions += unsigned(((n >> k) & 1) ^ ((n >> (k - 1)) & 1));
        if (variation(n) != transitions || variation(n) != 2 * d.blocks.size())
            variation_ok = false;
        if (rho(n) != d.top - d.bottom) rho_ok = false;
        std::uint64_t rebuilt = 0;
        for (std::size_t i = 0; i < d.blocks.size(); ++i) {
            const Block& b = d.blocks[i];
            if (b.low > b.high) blocks_ok = false;
            if (i && d.blocks[i - 1].low < b.high + 2) blocks_ok = false;  // maximality/order
            for (unsigned j = b.low; j <= b.high; ++j) rebuilt |= std::uint64_t(1) << j;
        }
        if (rebuilt != n) blocks_ok = false;
    }
    detail(variation_ok, "V(n) equals both the transition count and twice the block count, n <= 2^16");
    detail(rho_ok, "rho(n) = |n| - [n], n <= 2^16");
    detail(blocks_ok, "block decomposition reconstructs n with maximal separated runs, n <= 2^16");

    bool cover_ok = true;
    for (unsigned M = 1; M <= 10; ++M) {
        std::vector<int> hits(std::size_t(1) << M, 0);
        Rational total = 0;
        for (const CoverPiece& piece : complement_cover(M)) {
            total += piece.measure;
            if (piece.measure != Rational(long(piece.cosets.size())) * pow2(-int(M)))
                cover_ok = false;
            for (std::uint64_t x : piece.cosets) ++hits[x];
        }
        if (hits[0] != 0) cover_ok = false;
        for (std::size_t x = 1; x < hits.size(); ++x)
            if (hits[x] != 1) cover_ok = false;
        if (total != Rational(1) - pow2(-int(M))) cover_ok = false;
    }
    detail(cover_ok, "complement cover partitions the complement of I_M exactly, M <= 10");
    return true;
}

struct Criterion {
    int number;
    const char* description;
    bool (*run)();
};

const Criterion kCriteria[] = {
    {1, "exact identities: closed forms, block decomposition, kernel sums, unit integrals", criterion1},
    {2, "pointwise lower bounds on every block test region, n <= 4096", criterion2},
    {3, "frozen-constant upper bounds with doubled-sweep stability", criterion3},
    {4, "transform oracle: dual-route Fejer means, round trip, Parseval", criterion4},
    {5, "bounded families: endpoint law and frozen atom-statistic bound", criterion5},
    {6, "unbounded families: endpoint law, region bounds, decomposition, growth lock", criterion6},
    {7, "structural combinatorics, exhaustive n <= 2^16, M <= 10", criterion7},
};

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--criterion 1..7]\n";
            return 64;
        }
    }
    if (selected < 0 || selected > 7) {
        std::cerr << "usage: acceptance [--criterion 1..7]\n";
        return 64;
    }

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (selected && c.number != selected) continue;
        std::cout << "criterion " << c.number << ": " << c.description << "\n";
        checks_failed = 0;
        c.run();
        const bool pass = checks_failed == 0;
        if (!pass) ++failures;
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": "
                  << c.description << "\n";
    }
    return failures == 0 ? 0 : 1;
}
