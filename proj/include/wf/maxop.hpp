#pragma once

// Index families, the restricted maximal operator of Fejer means, and the
// two experiments that probe it:
//
//   boundedness: for an atom a supported on I_M and a family with a bounded
//   block-endpoint set A_s, the statistic
//     int over the complement of I_M of (max over members n of |sigma_n a|)^{1/2}
//   stays below a frozen constant (members below 2^M are dropped: sigma_n a = 0
//   there because the atom's spectrum starts at 2^M);
//
//   blow-up: for a family with |A_s| -> infinity, the martingale built from
//   weighted difference atoms (wf/hardy.hpp) makes
//     T(s) = int over the group of (max over members)^{1/2}
//   grow; per region attached to an endpoint of A_s the integral is at least
//   2^{-5} |A_s|^{-1/2} (bottom endpoints, edge_pair regions) respectively
//   2^{-7} |A_s|^{-1/2} (top endpoints, gap_pair regions).
//
// The decomposition behind the lower bounds, for a member alpha in
// [2^m, 2^{m+1}) at a selected scale m with weight lambda = 1/|A_m| and
// q = alpha - 2^m:
//   sigma_alpha F = (2^m/alpha) sigma_{2^m} F
//                 + (q/alpha) S_{2^m} F
//                 + (2^m lambda / alpha) w_{2^m} q K_q,
// exact on the grid; the third term has |third| = (2^m q lambda / alpha)|K_q|.

#include "wf/dyadic_index.hpp"
#include "wf/grid.hpp"
#include "wf/hardy.hpp"
#include "wf/kernels.hpp"
#include "wf/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wf {

struct IndexFamily {
    enum class Kind { powers, powers_plus_one, powers_plus_halfpower, alpha, beta, custom };
    Kind kind = Kind::powers;
    std::vector<std::uint64_t> custom_members;  // used when kind == custom (sorted)
};

// "powers" 2^s | "powers_plus_one" 2^s+1 | "powers_plus_halfpower" 2^s+2^(s/2)
// | "alpha" 2^s + 2^{k+1}-1 | "beta" 2^{s+1} - 2^k  (k = 0..s-1).
IndexFamily family_from_name(const std::string& name);
std::string family_name(const IndexFamily& fam);

// Sorted members in [2^s, 2^{s+1}); requires s >= 1.
std::vector<std::uint64_t> family_members(const IndexFamily& fam, unsigned s);

// Block-endpoint set A_s of the scale-s members.
BlockSet family_block_set(const IndexFamily& fam, unsigned s);

// Pointwise max of |sigma_n f| over the index list; all n <= 2^M, list nonempty.
GridFunction restricted_maximal(const GridFunction& f, const std::vector<std::uint64_t>& indices);

// int over the complement of I_M of sqrt(restricted maximal of the atom's
// grid); members below 2^M are dropped, members above 2^resolution are a
// resolution error.  Long-double accumulation (relative error ~1e-15).
double atom_statistic(const Atom& a, const std::vector<std::uint64_t>& indices, unsigned M);

// The three terms of the decomposition in the header comment, for the k-th
// selected scale of the spec; requires 2^{scales[k]} <= alpha_sn < 2^{scales[k]+1}.
// mean_term + partial_term + kernel_term == sigma_{alpha_sn} F exactly.
struct SigmaDecomposition {
    GridFunction mean_term;
    GridFunction partial_term;
    GridFunction kernel_term;
};
SigmaDecomposition sigma_decomposition(const Martingale& F, const CounterexampleSpec& spec,
                                       std::size_t k, std::uint64_t alpha_sn);

// Scale selection: k-th scale = smallest s <= max_scale with |A_s| >= k+1
// (and above the previous pick, keeping scales strictly increasing); the
// selected index is the largest member at that scale, the weight 1/|A_s|.
// Throws when even two scales cannot be selected ("no blow-up predicted").
CounterexampleSpec select_counterexample(const IndexFamily& fam, unsigned max_scale);

// --- experiments -------------------------------------------------------------

struct BlowupRow {
    unsigned scale = 0;
    std::string family;
    std::size_t endpoint_count = 0;  // |A_s|
    double t_value = 0;              // T(s)
    double predicted_lower = 0;      // |A_s|^{1/2} / 2^8, recorded not asserted
    double min_region_margin = 0;    // min over regions of integral - bound
    bool pass = false;               // all region bounds >= -tolerance
};

struct BlowupReport {
    std::vector<BlowupRow> rows;
    bool pass = false;
    // (s, family, |A_s|, T_s, predicted_lower, min_region_margin, pass)
    void write_csv(std::ostream& out) const;
    VerificationReport summary() const;
};

inline constexpr double kRegionTolerance = 1e-9;

// For each s in [min_s, max_s]: select scales up to s, assemble the
// martingale at resolution s+3, take the maximal over all family members of
// scales 1..s, and check the per-region bounds over the endpoint set A_s.
// Throws std::domain_error("no blow-up predicted") for bounded families.
BlowupReport blowup_experiment(const IndexFamily& fam, unsigned min_s, unsigned max_s);

struct BoundednessRow {
    unsigned support_level = 0;  // M
    std::uint64_t seed = 0;
    std::string family;
    double statistic = 0;
    bool pass = false;
};

struct BoundednessReport {
    std::vector<BoundednessRow> rows;
    std::vector<std::size_t> endpoint_counts;  // |A_s| per scale swept
    double max_statistic = 0;
    std::optional<double> frozen;  // bound the rows were checked against
    bool pass = false;
    void write_csv(std::ostream& out) const;
    VerificationReport summary() const;
};

// Atoms random_atom(seed, support_level, 1/2) for seeds 0..seed_count-1;
// member indices from scales [min_s, max_s] at grid resolution
// max(support_level+3, max_s+1); members below 2^support_level are dropped
// inside atom_statistic.  Statistic asserted <= frozen bound when given.
BoundednessReport boundedness_sweep(const IndexFamily& fam, unsigned min_s, unsigned max_s,
                                    std::uint64_t seed_count, unsigned support_level,
                                    std::optional<double> frozen_bound);

}  // namespace wf
