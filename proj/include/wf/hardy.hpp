#pragma once

// p-atoms, finite dyadic martingales, and the maximal-function quasinorm.
//
// An atom for exponent p is a function a with
//   supp a ⊆ I_M,   int a dmu = 0,   sup |a| <= 2^{M/p} = mu(I_M)^{-1/p}.
//
// A martingale is the list (F_0, ..., F_N) of conditional expectations of
// its densest level: F_n averages F_N over each level-n coset, which equals
// the Walsh partial sum S_{2^n} F_N.  Its maximal function is
// F* = max_n |F_n| and the quasinorm is the L_p quasinorm of F*.
//
// The divergence construction uses the building blocks
//   a_m := 2^m (D_{2^{m+1}} - D_{2^m})
//        = +2^{2m} on I_{m+1}, -2^{2m} on I_m \ I_{m+1}, 0 elsewhere,
// combined as F = sum_k lambda_k a_{m_k} over strictly increasing scales m_k
// with weights lambda_k = 1/|A_{m_k}| taken from a block-endpoint count.
// Its Walsh spectrum is flat on each scale block:
//   F^(j) = 2^{m_k} lambda_k   for 2^{m_k} <= j < 2^{m_k+1},  0 off the blocks,
// which gives the closed partial-sum form, for 2^{m_k} <= j <= alpha_k,
//   S_j F = S_{2^{m_k}} F + 2^{m_k} lambda_k (D_j - D_{2^{m_k}}).

#include "wf/grid.hpp"
#include "wf/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace wf {

struct Atom {
    Rational p;      // exponent in (0, 1]
    unsigned level;  // support level: values vanish outside I_level
    GridFunction f;  // at resolution >= level
};

struct AtomCheck {
    bool support_ok = false;
    bool mean_ok = false;
    bool sup_ok = false;
    bool pass() const { return support_ok && mean_ok && sup_ok; }
    std::string violated() const;  // comma-separated clause names, "" when pass
};

// Checks the three atom clauses exactly (the sup bound via |v|^a <= 2^{M b}
// for p = a/b, avoiding irrational roots).
AtomCheck validate_atom(const Atom& a);

// Deterministic atom from a seed: signed rational values on the I_level cells
// at resolution level+3, mean-corrected, then rescaled so the sup bound
// holds with the exponent floored to an integer power of two.
Atom random_atom(std::uint64_t seed, unsigned level, const Rational& p);

// a_m above; requires resolution >= m+1.
GridFunction dirichlet_difference_atom(unsigned m, unsigned resolution);

// Weighted scale selection for the divergence construction.
struct CounterexampleSpec {
    std::vector<std::uint64_t> alphas;  // strictly increasing indices
    std::vector<unsigned> scales;       // scales[k] = top bit of alphas[k], strictly increasing
    std::vector<Rational> lambdas;      // weights, lambdas[k] = 1/(block endpoint count at scales[k])

    std::size_t size() const { return alphas.size(); }

    nlohmann::ordered_json to_json() const;
    static CounterexampleSpec from_json(const nlohmann::json& j);
};

// Structural validation: matching lengths, strict monotonicity, scale = top
// bit, lambdas in (0,1], and sum lambda_k^2 <= kWeightSquareSumBound.
void validate_spec(const CounterexampleSpec& spec);

struct Martingale {
    std::vector<GridFunction> levels;  // levels[n] has resolution n

    unsigned top_level() const { return static_cast<unsigned>(levels.size()) - 1; }
    const GridFunction& densest() const { return levels.back(); }
};

// Conditional-expectation chain of a given densest level.
Martingale martingale_from(const GridFunction& densest);

// Level A = sum of lambda_k a_{scales[k]} over scales[k] < A, for A = 0..N;
// requires N >= scales.front() + 1.
Martingale assemble_martingale(const CounterexampleSpec& spec, unsigned N);

// F* = pointwise max over levels of |F_n|, at the densest resolution.
GridFunction maximal_function(const Martingale& F);

// L_p quasinorm of the maximal function.
double hardy_quasinorm(const Martingale& F, const Rational& p);

// sum_k lambda_k^p: the atomic-decomposition membership certificate.
double atomic_certificate(const CounterexampleSpec& spec, const Rational& p);

// Exact check of the closed partial-sum form (header comment) for the k-th
// scale; requires 2^{scales[k]} <= j <= alphas[k].
bool partial_sum_formula_check(const Martingale& F, const CounterexampleSpec& spec, std::size_t k,
                               std::uint64_t j);

// One CSV file per level at <prefix>level<n>.csv.
void write_martingale_csv(const Martingale& F, const std::string& prefix);

}  // namespace wf
