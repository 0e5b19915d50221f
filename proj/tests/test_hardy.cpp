#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wf/grid.hpp"
#include "wf/hardy.hpp"
#include "wf/kernels.hpp"
#include "wf/rational.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

using namespace wf;

namespace {

const Rational kHalf = make_rational(1, 2);

CounterexampleSpec small_spec() {
    CounterexampleSpec spec;
    spec.alphas = {4, 12};
    spec.scales = {2, 3};
    spec.lambdas = {make_rational(1, 2), make_rational(1, 3)};
    return spec;
}

}  // namespace

TEST_CASE("difference atoms have the advertised three-level shape") {
    for (unsigned m : {0u, 1u, 3u}) {
        const unsigned R = m + 3;
        const GridFunction a = dirichlet_difference_atom(m, R);
        const Rational peak = pow2(2 * int(m));
        for (std::uint64_t x = 0; x < a.size(); ++x) {
            const std::uint64_t low_m = x & ((std::uint64_t(1) << m) - 1);
            const bool in_m = low_m == 0;
            const bool in_m1 = (x & ((std::uint64_t(1) << (m + 1)) - 1)) == 0;
            CHECK(a[x] == (in_m1 ? peak : in_m ? -peak : Rational(0)));
        }
        // a valid 1/2-atom on I_m: sup = 2^{2m} = measure(I_m)^{-2}
        const AtomCheck chk = validate_atom({kHalf, m, a});
        CHECK(chk.pass());
        CHECK(chk.violated().empty());
    }
    CHECK_THROWS_AS(dirichlet_difference_atom(3, 3), std::domain_error);
}

TEST_CASE("atom clauses are checked independently") {
    const unsigned M = 2, R = 5;
    // indicator of I_M: supported, wrong mean
    const AtomCheck mean_bad =
        validate_atom({kHalf, M, GridFunction::interval_indicator(R, M)});
    CHECK(mean_bad.support_ok);
    CHECK(!mean_bad.mean_ok);
    CHECK(mean_bad.violated() == "mean");

    // mass outside I_M: mean-zero walsh function with full support
    const AtomCheck supp_bad = validate_atom({kHalf, M, walsh(1, R)});
    CHECK(!supp_bad.support_ok);

    // overshoot the sup bound 2^{2M} by one
    GridFunction f = dirichlet_difference_atom(M, R);
    f *= Rational(long((1 << (2 * M)) + 1)) / Rational(long(1 << (2 * M)));
    const AtomCheck sup_bad = validate_atom({kHalf, M, f});
    CHECK(sup_bad.support_ok);
    CHECK(sup_bad.mean_ok);
    CHECK(!sup_bad.sup_ok);

    // fractional exponent bound stays exact: p = 2/3, bound 2^{M·3/2}
    // value 8 at M = 2 gives |v|^2 = 64 = 2^{2·3}: admissible
    GridFunction g(R);
    g[0] = 8;
    g[1 << M] = -8;
    CHECK(validate_atom({make_rational(2, 3), M, g}).pass());
    g[0] = 9;
    g[1 << M] = -9;
    CHECK(!validate_atom({make_rational(2, 3), M, g}).sup_ok);
}

TEST_CASE("random atoms validate across seeds, levels and exponents") {
    for (const Rational& p : {kHalf, make_rational(2, 3), Rational(1)})
        for (unsigned level : {2u, 4u, 6u})
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                const Atom a = random_atom(seed, level, p);
                CHECK(a.f.resolution() == level + 3);
                CHECK(validate_atom(a).pass());
            }
    // deterministic: same seed, same atom
    CHECK(random_atom(7, 4, kHalf).f == random_atom(7, 4, kHalf).f);
    CHECK_FALSE(random_atom(7, 4, kHalf).f == random_atom(8, 4, kHalf).f);
    CHECK_THROWS_AS(random_atom(0, 4, Rational(2)), std::domain_error);
}

TEST_CASE("martingale levels are conditional expectations and partial sums") {
    const Atom a = random_atom(3, 3, kHalf);
    const Martingale F = martingale_from(a.f);
    const unsigned R = a.f.resolution();
    CHECK(F.top_level() == R);
    CHECK(F.densest() == a.f);
    for (unsigned n = 0; n <= R; ++n) {
        CHECK(F.levels[n].resolution() == n);
        CHECK(F.levels[n] == partial_sum(a.f, std::uint64_t(1) << n).coarsen(n));
        CHECK(F.levels[n].integral() == a.f.integral());
    }
}

TEST_CASE("counterexample spec validation") {
    CHECK_NOTHROW(validate_spec(small_spec()));

    CounterexampleSpec bad = small_spec();
    bad.scales = {2};
    CHECK_THROWS_AS(validate_spec(bad), std::domain_error);

    bad = small_spec();
    bad.scales = {2, 2};
    bad.alphas = {4, 5};
    CHECK_THROWS_AS(validate_spec(bad), std::domain_error);  // scales not increasing

    bad = small_spec();
    bad.scales = {2, 4};
    CHECK_THROWS_AS(validate_spec(bad), std::domain_error);  // scale is not the top bit

    bad = small_spec();
    bad.lambdas[0] = Rational(2);
    CHECK_THROWS_AS(validate_spec(bad), std::domain_error);  // weight above 1

    // weight square sum bound: inclusive at 2, so two unit weights sit exactly
    // on it and three exceed it
    bad = small_spec();
    bad.lambdas = {Rational(1), Rational(1)};
    CHECK_NOTHROW(validate_spec(bad));
    bad.alphas = {4, 12, 24};
    bad.scales = {2, 3, 4};
    bad.lambdas = {Rational(1), Rational(1), Rational(1)};
    CHECK_THROWS_AS(validate_spec(bad), std::domain_error);
}

TEST_CASE("spec json round trip") {
    const CounterexampleSpec spec = small_spec();
    const CounterexampleSpec back = CounterexampleSpec::from_json(spec.to_json());
    CHECK(back.alphas == spec.alphas);
    CHECK(back.scales == spec.scales);
    CHECK(back.lambdas == spec.lambdas);
}

TEST_CASE("assembled martingale: level contents and flat spectrum blocks") {
    const CounterexampleSpec spec = small_spec();
    const unsigned N = 5;
    const Martingale F = assemble_martingale(spec, N);
    REQUIRE(F.levels.size() == N + 1);

    // level A collects the difference atoms of scales below A
    for (unsigned A = 0; A <= N; ++A) {
        GridFunction expect(A);
        for (std::size_t k = 0; k < spec.size(); ++k)
            if (spec.scales[k] < A)
                expect += spec.lambdas[k] * dirichlet_difference_atom(spec.scales[k], A);
        CHECK(F.levels[A] == expect);
    }

    // consistency: the assembled chain is the conditional-expectation chain
    const Martingale G = martingale_from(F.densest());
    REQUIRE(G.levels.size() == F.levels.size());
    for (unsigned A = 0; A <= N; ++A) CHECK(G.levels[A] == F.levels[A]);

    // spectrum: flat value 2^{m_k} lambda_k on [2^{m_k}, 2^{m_k+1}), zero off blocks
    const CoeffVector c = fwht(F.densest());
    for (std::uint64_t j = 0; j < c.size(); ++j) {
        Rational expect = 0;
        for (std::size_t k = 0; k < spec.size(); ++k) {
            const std::uint64_t lo = std::uint64_t(1) << spec.scales[k];
            if (j >= lo && j < 2 * lo) expect = pow2(int(spec.scales[k])) * spec.lambdas[k];
        }
        CHECK(c[j] == expect);
    }

    CHECK_THROWS_AS(assemble_martingale(spec, 2), std::domain_error);
}

TEST_CASE("closed partial-sum form across every admissible index") {
    const CounterexampleSpec spec = small_spec();
    const Martingale F = assemble_martingale(spec, 5);
    for (std::size_t k = 0; k < spec.size(); ++k)
        for (std::uint64_t j = std::uint64_t(1) << spec.scales[k]; j <= spec.alphas[k]; ++j)
            CHECK(partial_sum_formula_check(F, spec, k, j));
    CHECK_THROWS_AS(partial_sum_formula_check(F, spec, 0, 3), std::domain_error);
    CHECK_THROWS_AS(partial_sum_formula_check(F, spec, 1, 13), std::domain_error);
    CHECK_THROWS_AS(partial_sum_formula_check(F, spec, 2, 4), std::domain_error);
}

TEST_CASE("maximal function and quasinorm on a hand example") {
    // densest level (2, 0) at resolution 1: levels are (1) and (2, 0)
    GridFunction f(1);
    f[0] = 2;
    const Martingale F = martingale_from(f);
    const GridFunction star = maximal_function(F);
    CHECK(star.values() == std::vector<Rational>{Rational(2), Rational(1)});
    CHECK(hardy_quasinorm(F, Rational(1)) == doctest::Approx(1.5).epsilon(1e-15));
    // p = 1/2: (2^{-1}(sqrt 2 + 1))^2
    const double expect = std::pow((std::sqrt(2.0) + 1) / 2, 2.0);
    CHECK(hardy_quasinorm(F, kHalf) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("maximal function scales absolutely homogeneously") {
    const Atom a = random_atom(11, 3, kHalf);
    const Martingale F = martingale_from(a.f);
    GridFunction scaled = a.f;
    scaled *= Rational(-3);
    const Martingale G = martingale_from(scaled);
    const GridFunction fs = maximal_function(F), gs = maximal_function(G);
    for (std::uint64_t x = 0; x < fs.size(); ++x) CHECK(gs[x] == Rational(3) * fs[x]);
}

TEST_CASE("quasinorm dominates the densest level") {
    const Atom a = random_atom(19, 4, kHalf);
    const Martingale F = martingale_from(a.f);
    CHECK(hardy_quasinorm(F, kHalf) >= lp_quasinorm(a.f, kHalf) - 1e-12);
}

TEST_CASE("atomic certificate") {
    const CounterexampleSpec spec = small_spec();
    const double expect = std::sqrt(0.5) + std::sqrt(1.0 / 3);
    CHECK(atomic_certificate(spec, kHalf) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(atomic_certificate(spec, Rational(1)) == doctest::Approx(5.0 / 6).epsilon(1e-15));
}

TEST_CASE("martingale csv dump round-trips") {
    const CounterexampleSpec spec = small_spec();
    const Martingale F = assemble_martingale(spec, 4);
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "wf_martingale_test";
    std::filesystem::create_directories(dir);
    const std::string prefix = (dir / "F_").string();
    write_martingale_csv(F, prefix);
    for (unsigned n = 0; n <= F.top_level(); ++n) {
        std::ifstream in(prefix + "level" + std::to_string(n) + ".csv");
        REQUIRE(in.good());
        CHECK(GridFunction::read_csv(in) == F.levels[n]);
    }
    std::filesystem::remove_all(dir);
}
