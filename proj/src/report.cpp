#include "wf/report.hpp"

#include <cstdio>

namespace wf {

namespace {

nlohmann::ordered_json rational_json(const Rational& q) {
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

std::string float17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["range"] = {range_lo, range_hi};
    j["resolution"] = resolution;
    if (worst_ratio_exact)
        j["worst_ratio"] = rational_json(*worst_ratio_exact);
    else if (worst_ratio_float)
        j["worst_ratio"] = *worst_ratio_float;
    else
        j["worst_ratio"] = nullptr;
    j["witness"] = {{"n", witness_n}, {"coset", witness_coset}};
    if (constant)
        j["constant"] = rational_json(*constant);
    else
        j["constant"] = nullptr;
    j["pass"] = pass;
    return j;
}

std::string VerificationReport::summary() const {
    std::string s = check + ": range [" + std::to_string(range_lo) + ", " + std::to_string(range_hi) +
                    "], M=" + std::to_string(resolution);
    if (worst_ratio_exact)
        s += ", worst ratio " + to_string(*worst_ratio_exact);
    else if (worst_ratio_float)
        s += ", worst ratio " + float17(*worst_ratio_float);
    s += ", witness (n=" + std::to_string(witness_n) + ", coset=" + std::to_string(witness_coset) + ")";
    if (constant) s += ", constant " + to_string(*constant);
    s += pass ? " -- pass" : " -- FAIL";
    return s;
}

VerificationReport merge_worst(VerificationReport a, const VerificationReport& b) {
    const bool b_wins = [&] {
        if (a.worst_ratio_exact && b.worst_ratio_exact) {
            if (*b.worst_ratio_exact != *a.worst_ratio_exact)
                return *b.worst_ratio_exact > *a.worst_ratio_exact;
        } else if (a.worst_ratio_float && b.worst_ratio_float) {
            if (*b.worst_ratio_float != *a.worst_ratio_float)
                return *b.worst_ratio_float > *a.worst_ratio_float;
        } else if (!a.worst_ratio_exact && !a.worst_ratio_float) {
            return static_cast<bool>(b.worst_ratio_exact || b.worst_ratio_float);
        } else if (!b.worst_ratio_exact && !b.worst_ratio_float) {
            return false;
        }
        return b.witness_n < a.witness_n;  // tie: smaller witness
    }();
    if (b_wins) {
        a.worst_ratio_exact = b.worst_ratio_exact;
        a.worst_ratio_float = b.worst_ratio_float;
        a.witness_n = b.witness_n;
        a.witness_coset = b.witness_coset;
    }
    a.range_lo = std::min(a.range_lo, b.range_lo);
    a.range_hi = std::max(a.range_hi, b.range_hi);
    a.resolution = std::max(a.resolution, b.resolution);
    a.pass = a.pass && b.pass;
    if (b.constant && (!a.constant || *b.constant > *a.constant)) a.constant = b.constant;
    return a;
}

}  // namespace wf
