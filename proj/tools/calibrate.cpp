// Calibration search for every frozen constant: finds the minimal admissible
// value on each calibration range and emits the frozen.hpp block (constants
// frozen at twice the calibrated value, growth tables recorded as measured).
//
//   calibrate                 human-readable calibration summary
//   calibrate --emit-header   the block to paste into include/wf/frozen.hpp

#include "wf/hardy.hpp"
#include "wf/kernels.hpp"
#include "wf/maxop.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

std::string f17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string rational_literal(const wf::Rational& q) {
    return "make_rational(" + q.get_num().get_str() + ", " + q.get_den().get_str() + ")";
}

struct Calibration {
    wf::Rational upper_bound_min;        // n <= 1024
    wf::Rational upper_bound_min_twice;  // n <= 2048 (stability info)
    wf::Rational tail_min;               // M in {3,4,5}, n <= 2^{M+2}
    wf::Rational tail_min_twice;         // n <= 2^{M+3}
    double atom_stat[3] = {0, 0, 0};     // powers, +one, +halfpower
    double atom_quasinorm = 0;
    double certificate_multiple = 0;
    std::vector<double> growth_beta, growth_alpha;
};

Calibration run() {
    Calibration c;
    c.upper_bound_min = *wf::check_upper_bound_sweep(1, 1024, std::nullopt).worst_ratio_exact;
    c.upper_bound_min_twice = *wf::check_upper_bound_sweep(1, 2048, std::nullopt).worst_ratio_exact;
    c.tail_min = *wf::tail_integral_sweep(3, 5, 0, std::nullopt).worst_ratio_exact;
    c.tail_min_twice = *wf::tail_integral_sweep(3, 5, 1, std::nullopt).worst_ratio_exact;

    const char* family_names[3] = {"powers", "powers_plus_one", "powers_plus_halfpower"};
    for (int i = 0; i < 3; ++i) {
        const wf::IndexFamily fam = wf::family_from_name(family_names[i]);
        for (unsigned level = 4; level <= 8; ++level) {
            const auto rep = wf::boundedness_sweep(fam, level, level + 2, 100, level, std::nullopt);
            c.atom_stat[i] = std::max(c.atom_stat[i], rep.max_statistic);
        }
    }

    const wf::Rational half = wf::make_rational(1, 2);
    for (unsigned level = 4; level <= 8; ++level)
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const wf::Atom a = wf::random_atom(seed, level, half);
            const double q = wf::hardy_quasinorm(wf::martingale_from(a.f), half);
            c.atom_quasinorm = std::max(c.atom_quasinorm, q);
        }

    for (const char* name : {"alpha", "beta"}) {
        const wf::IndexFamily fam = wf::family_from_name(name);
        for (unsigned s = 4; s <= 10; ++s) {
            const wf::CounterexampleSpec spec = wf::select_counterexample(fam, s);
            const wf::Martingale F = wf::assemble_martingale(spec, s + 3);
            const double ratio = std::sqrt(wf::hardy_quasinorm(F, half)) /
                                 wf::atomic_certificate(spec, half);
            c.certificate_multiple = std::max(c.certificate_multiple, ratio);
        }
    }

    for (const wf::BlowupRow& row :
         wf::blowup_experiment(wf::family_from_name("beta"), 4, 10).rows)
        c.growth_beta.push_back(row.t_value);
    for (const wf::BlowupRow& row :
         wf::blowup_experiment(wf::family_from_name("alpha"), 4, 10).rows)
        c.growth_alpha.push_back(row.t_value);
    return c;
}

void emit_header(const Calibration& c) {
    auto arr = [](const std::vector<double>& v) {
        std::string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + f17(v[i]);
        return s + "}";
    };
    std::cout << "// --- calibrated block (output of: calibrate --emit-header) -----------------\n\n"
              << "// |n K_n| <= c * block-kernel sum; calibrated on n <= 1024, frozen at 2x.\n"
              << "inline const Rational kUpperBoundConstant = " << rational_literal(2 * c.upper_bound_min)
              << ";\n\n"
              << "// int_{I_M} |K_n(x+t)| dmu <= c n 2^{k+l-M}; calibrated on M in {3,4,5},\n"
              << "// n <= 2^{M+2}, frozen at 2x.\n"
              << "inline const Rational kTailIntegralConstant = " << rational_literal(2 * c.tail_min)
              << ";\n\n"
              << "// Atom statistic (integral of sqrt of the restricted maximal function over\n"
              << "// the complement of the support interval) per bounded family; calibrated on\n"
              << "// seeds 0..99, support levels 4..8, frozen at 2x the maximum.\n"
              << "inline constexpr double kAtomStatisticPowers = " << f17(2 * c.atom_stat[0]) << ";\n"
              << "inline constexpr double kAtomStatisticPowersPlusOne = " << f17(2 * c.atom_stat[1])
              << ";\n"
              << "inline constexpr double kAtomStatisticPowersPlusHalfpower = "
              << f17(2 * c.atom_stat[2]) << ";\n\n"
              << "// L_{1/2} quasinorm of the martingale of one random 1/2-atom; calibrated on\n"
              << "// seeds 0..99, support levels 4..8, frozen at 2x the maximum.\n"
              << "inline constexpr double kAtomQuasinormBound = " << f17(2 * c.atom_quasinorm)
              << ";\n\n"
              << "// hardy_quasinorm(F, 1/2)^{1/2} <= multiple * sum_k lambda_k^{1/2} for\n"
              << "// counterexample specs; calibrated on alpha/beta, scales 4..10, frozen at 2x.\n"
              << "inline constexpr double kCertificateMultiple = " << f17(2 * c.certificate_multiple)
              << ";\n\n"
              << "// Regression lock for the blow-up growth table T(s), recorded from the first\n"
              << "// run (deterministic; compared with tolerance 1e-9).\n"
              << "inline constexpr unsigned kBlowupMinScale = 4;\n"
              << "inline constexpr unsigned kBlowupMaxScale = 10;\n"
              << "inline constexpr double kBlowupGrowthBeta[] = " << arr(c.growth_beta) << ";\n"
              << "inline constexpr double kBlowupGrowthAlpha[] = " << arr(c.growth_alpha) << ";\n\n"
              << "// --- end calibrated block ---------------------------------------------------\n";
}

void print_summary(const Calibration& c) {
    std::cout << "upper bound: minimal c (n<=1024) = " << wf::to_string(c.upper_bound_min)
              << " ~ " << f17(mpq_get_d(c.upper_bound_min.get_mpq_t())) << "\n"
              << "             minimal c (n<=2048) = " << wf::to_string(c.upper_bound_min_twice)
              << " (stability: must not exceed the n<=1024 value)\n"
              << "tail integral: minimal c (n<=2^{M+2}) = " << wf::to_string(c.tail_min) << " ~ "
              << f17(mpq_get_d(c.tail_min.get_mpq_t())) << "\n"
              << "               minimal c (n<=2^{M+3}) = " << wf::to_string(c.tail_min_twice) << "\n"
              << "atom statistic max: powers = " << f17(c.atom_stat[0])
              << ", powers_plus_one = " << f17(c.atom_stat[1])
              << ", powers_plus_halfpower = " << f17(c.atom_stat[2]) << "\n"
              << "atom quasinorm max = " << f17(c.atom_quasinorm) << "\n"
              << "certificate multiple max = " << f17(c.certificate_multiple) << "\n";
    std::cout << "T(s) beta:";
    for (double t : c.growth_beta) std::cout << ' ' << f17(t);
    std::cout << "\nT(s) alpha:";
    for (double t : c.growth_alpha) std::cout << ' ' << f17(t);
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    const bool emit = argc > 1 && std::string(argv[1]) == "--emit-header";
    const Calibration c = run();
    if (emit)
        emit_header(c);
    else
        print_summary(c);
    return 0;
}
