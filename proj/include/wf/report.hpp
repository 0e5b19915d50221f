#pragma once

// Outcome record for an identity or bound sweep: which check ran, over what
// index range and resolution, the worst ratio seen with the witness that
// attains it, and the empirical constant when the check calibrates one.

#include "wf/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace wf {

struct VerificationReport {
    std::string check;
    std::uint64_t range_lo = 0;
    std::uint64_t range_hi = 0;
    unsigned resolution = 0;
    std::optional<Rational> worst_ratio_exact;  // preferred when available
    std::optional<double> worst_ratio_float;
    std::uint64_t witness_n = 0;
    std::uint64_t witness_coset = 0;
    std::optional<Rational> constant;
    bool pass = false;

    // {check, range, resolution, worst_ratio: {num, den} | float,
    //  witness: {n, coset}, constant, pass}
    nlohmann::ordered_json to_json() const;

    // One human-readable line for console output.
    std::string summary() const;
};

// Keep whichever report shows the larger worst ratio (used to merge
// independently-swept chunks); ties keep the smaller witness index.
VerificationReport merge_worst(VerificationReport a, const VerificationReport& b);

}  // namespace wf
