#include "wf/maxop.hpp"

#include "wf/frozen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace wf {

namespace {

long double to_ld(const Rational& q) { return static_cast<long double>(mpq_get_d(q.get_mpq_t())); }

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Kahan-compensated sum of sqrt(values) * 2^{-R} over the given cosets.
double sqrt_integral_over(const GridFunction& f, const std::vector<std::uint64_t>& cosets) {
    long double acc = 0.0L, comp = 0.0L;
    for (std::uint64_t x : cosets) {
        const long double y = sqrtl(to_ld(f[x])) - comp;
        const long double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return static_cast<double>(ldexpl(acc, -static_cast<int>(f.resolution())));
}

}  // namespace

IndexFamily family_from_name(const std::string& name) {
    IndexFamily fam;
    if (name == "powers") fam.kind = IndexFamily::Kind::powers;
    else if (name == "powers_plus_one") fam.kind = IndexFamily::Kind::powers_plus_one;
    else if (name == "powers_plus_halfpower") fam.kind = IndexFamily::Kind::powers_plus_halfpower;
    else if (name == "alpha") fam.kind = IndexFamily::Kind::alpha;
    else if (name == "beta") fam.kind = IndexFamily::Kind::beta;
    else if (name == "custom") fam.kind = IndexFamily::Kind::custom;
    else throw std::domain_error("unknown family '" + name + "'");
    return fam;
}

std::string family_name(const IndexFamily& fam) {
    switch (fam.kind) {
        case IndexFamily::Kind::powers: return "powers";
        case IndexFamily::Kind::powers_plus_one: return "powers_plus_one";
        case IndexFamily::Kind::powers_plus_halfpower: return "powers_plus_halfpower";
        case IndexFamily::Kind::alpha: return "alpha";
        case IndexFamily::Kind::beta: return "beta";
        case IndexFamily::Kind::custom: return "custom";
    }
    return "custom";
}

std::vector<std::uint64_t> family_members(const IndexFamily& fam, unsigned s) {
    if (s == 0) throw std::domain_error("family_members: scale must be >= 1");
    if (s > 62) throw std::domain_error("family_members: scale too large");
    const std::uint64_t lo = std::uint64_t{1} << s;
    std::vector<std::uint64_t> out;
    switch (fam.kind) {
        case IndexFamily::Kind::powers:
            out.push_back(lo);
            break;
        case IndexFamily::Kind::powers_plus_one:
            out.push_back(lo + 1);
            break;
        case IndexFamily::Kind::powers_plus_halfpower:
            out.push_back(lo + (std::uint64_t{1} << (s / 2)));
            break;
        case IndexFamily::Kind::alpha:
            for (unsigned k = 0; k < s; ++k) out.push_back(lo + (std::uint64_t{1} << (k + 1)) - 1);
            break;
        case IndexFamily::Kind::beta:
            for (unsigned k = s; k-- > 0;) out.push_back((lo << 1) - (std::uint64_t{1} << k));
            break;
        case IndexFamily::Kind::custom:
            for (std::uint64_t n : fam.custom_members)
                if (n >= lo && n < (lo << 1)) out.push_back(n);
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

BlockSet family_block_set(const IndexFamily& fam, unsigned s) {
    return build_block_set(s, family_members(fam, s));
}

GridFunction restricted_maximal(const GridFunction& f, const std::vector<std::uint64_t>& indices) {
    if (indices.empty()) throw std::domain_error("restricted_maximal: empty index list");
    GridFunction out(f.resolution());
    for (std::uint64_t n : indices) {
        const GridFunction s = fejer_mean(f, n);  // checks n <= 2^M
        for (std::size_t x = 0; x < out.size(); ++x) {
            Rational v = s[x] < 0 ? Rational(-s[x]) : s[x];
            if (v > out[x]) out[x] = v;
        }
    }
    return out;
}

double atom_statistic(const Atom& a, const std::vector<std::uint64_t>& indices, unsigned M) {
    if (a.f.resolution() < M)
        throw std::domain_error("atom_statistic: grid coarser than the support level");
    const std::uint64_t support_mask = (M == 0) ? 0 : ((std::uint64_t{1} << M) - 1);
    for (std::size_t x = 0; x < a.f.size(); ++x)
        if ((x & support_mask) != 0 && a.f[x] != 0)
            throw std::domain_error("atom_statistic: atom not supported on the level-" +
                                    std::to_string(M) + " interval");
    std::vector<std::uint64_t> kept;
    for (std::uint64_t n : indices)
        if (n >= (std::uint64_t{1} << M)) kept.push_back(n);  // below: sigma_n a = 0
    if (kept.empty()) return 0.0;
    const GridFunction sup = restricted_maximal(a.f, kept);
    const std::uint64_t mask = (std::uint64_t{1} << M) - 1;
    std::vector<std::uint64_t> complement;
    for (std::uint64_t x = 0; x < sup.size(); ++x)
        if ((x & mask) != 0) complement.push_back(x);
    return sqrt_integral_over(sup, complement);
}

SigmaDecomposition sigma_decomposition(const Martingale& F, const CounterexampleSpec& spec,
                                       std::size_t k, std::uint64_t alpha_sn) {
    if (k >= spec.size()) throw std::domain_error("sigma_decomposition: no such scale");
    const unsigned m = spec.scales[k];
    const std::uint64_t pow_m = std::uint64_t{1} << m;
    if (alpha_sn < pow_m || alpha_sn >= (pow_m << 1))
        throw std::domain_error("sigma_decomposition: index outside [2^scale, 2^{scale+1})");
    const GridFunction& f = F.densest();
    const unsigned R = f.resolution();
    const Rational inv_alpha = make_rational(1, static_cast<long>(alpha_sn));
    const std::uint64_t q = alpha_sn - pow_m;

    SigmaDecomposition d{GridFunction(R), GridFunction(R), GridFunction(R)};
    d.mean_term = fejer_mean(f, pow_m);
    d.mean_term *= Rational(static_cast<long>(pow_m)) * inv_alpha;
    d.partial_term = partial_sum(f, pow_m);
    d.partial_term *= Rational(static_cast<long>(q)) * inv_alpha;
    if (q > 0) {
        d.kernel_term = fejer(q, R);
        d.kernel_term *= Rational(static_cast<long>(q)) * Rational(static_cast<long>(pow_m)) *
                         spec.lambdas[k] * inv_alpha;
        const GridFunction w = walsh(pow_m, R);
        for (std::size_t x = 0; x < d.kernel_term.size(); ++x) d.kernel_term[x] *= w[x];
    }
    return d;
}

CounterexampleSpec select_counterexample(const IndexFamily& fam, unsigned max_scale) {
    CounterexampleSpec spec;
    unsigned s = 1;
    for (std::size_t k = 0;; ++k) {
        // smallest admissible scale with |A_s| >= k+1, above the previous pick
        bool found = false;
        for (; s <= max_scale; ++s) {
            const BlockSet bs = family_block_set(fam, s);
            if (bs.cardinality >= k + 1) {
                spec.scales.push_back(s);
                spec.alphas.push_back(family_members(fam, s).back());
                spec.lambdas.push_back(make_rational(1, static_cast<long>(bs.cardinality)));
                ++s;
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    if (spec.size() < 2) throw std::domain_error("no blow-up predicted");
    validate_spec(spec);
    return spec;
}

// --- experiments -------------------------------------------------------------

void BlowupReport::write_csv(std::ostream& out) const {
    out << "s,family,endpoint_count,t_value,predicted_lower,min_region_margin,pass\n";
    for (const BlowupRow& r : rows)
        out << r.scale << ',' << r.family << ',' << r.endpoint_count << ',' << format17(r.t_value)
            << ',' << format17(r.predicted_lower) << ',' << format17(r.min_region_margin) << ','
            << (r.pass ? 1 : 0) << '\n';
}

VerificationReport BlowupReport::summary() const {
    VerificationReport rep;
    rep.check = rows.empty() ? "blowup" : "blowup_" + rows.front().family;
    rep.pass = pass;
    if (!rows.empty()) {
        rep.range_lo = rows.front().scale;
        rep.range_hi = rows.back().scale;
        rep.resolution = rows.back().scale + 3;
        double worst = rows.front().min_region_margin;
        unsigned worst_s = rows.front().scale;
        for (const BlowupRow& r : rows)
            if (r.min_region_margin < worst) {
                worst = r.min_region_margin;
                worst_s = r.scale;
            }
        rep.worst_ratio_float = worst;
        rep.witness_n = worst_s;
    }
    return rep;
}

BlowupReport blowup_experiment(const IndexFamily& fam, unsigned min_s, unsigned max_s) {
    if (min_s < 2 || min_s > max_s) throw std::domain_error("blowup_experiment: bad scale range");
    // Bounded endpoint sets predict no growth; refuse rather than report noise.
    std::size_t peak = 0;
    for (unsigned s = min_s; s <= max_s; ++s)
        peak = std::max(peak, family_block_set(fam, s).cardinality);
    if (peak <= 3) throw std::domain_error("no blow-up predicted");

    BlowupReport report;
    report.pass = true;
    for (unsigned s = min_s; s <= max_s; ++s) {
        const unsigned N = s + 3;
        detail::check_resolution(N);
        const CounterexampleSpec spec = select_counterexample(fam, s);
        const Martingale F = assemble_martingale(spec, N);
        std::vector<std::uint64_t> members;
        for (unsigned t = 1; t <= s; ++t)
            for (std::uint64_t n : family_members(fam, t)) members.push_back(n);
        const GridFunction sup = restricted_maximal(F.densest(), members);

        const BlockSet bs = family_block_set(fam, s);
        const double inv_sqrt_card = 1.0 / std::sqrt(static_cast<double>(bs.cardinality));

        BlowupRow row;
        row.scale = s;
        row.family = family_name(fam);
        row.endpoint_count = bs.cardinality;
        row.predicted_lower = std::sqrt(static_cast<double>(bs.cardinality)) / 256.0;
        row.pass = true;
        row.min_region_margin = std::numeric_limits<double>::infinity();

        auto check_region = [&](const TestRegion& region, double bound) {
            const double integral = sqrt_integral_over(sup, region.cosets(N));
            const double margin = integral - bound;
            row.min_region_margin = std::min(row.min_region_margin, margin);
            if (margin < -kRegionTolerance) row.pass = false;
        };
        for (unsigned l : bs.l_set) check_region(edge_pair_region(l), inv_sqrt_card / 32.0);
        for (unsigned t : bs.t_set) check_region(gap_pair_region(t), inv_sqrt_card / 128.0);

        std::vector<std::uint64_t> all;
        all.reserve(sup.size());
        for (std::uint64_t x = 0; x < sup.size(); ++x) all.push_back(x);
        row.t_value = sqrt_integral_over(sup, all);

        report.pass = report.pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

void BoundednessReport::write_csv(std::ostream& out) const {
    out << "support_level,seed,family,statistic,pass\n";
    for (const BoundednessRow& r : rows)
        out << r.support_level << ',' << r.seed << ',' << r.family << ','
            << format17(r.statistic) << ',' << (r.pass ? 1 : 0) << '\n';
}

VerificationReport BoundednessReport::summary() const {
    VerificationReport rep;
    rep.check = rows.empty() ? "boundedness" : "boundedness_" + rows.front().family;
    rep.pass = pass;
    rep.worst_ratio_float = max_statistic;
    if (frozen) rep.constant = Rational(*frozen);  // doubles embed exactly
    if (!rows.empty()) {
        rep.range_lo = rows.front().seed;
        rep.range_hi = rows.back().seed;
        rep.resolution = rows.front().support_level + 3;
        for (const BoundednessRow& r : rows)
            if (r.statistic == max_statistic) {
                rep.witness_n = r.seed;
                break;
            }
    }
    return rep;
}

BoundednessReport boundedness_sweep(const IndexFamily& fam, unsigned min_s, unsigned max_s,
                                    std::uint64_t seed_count, unsigned support_level,
                                    std::optional<double> frozen_bound) {
    if (min_s < 1 || min_s > max_s) throw std::domain_error("boundedness_sweep: bad scale range");
    const unsigned R = std::max(support_level + 3, max_s + 1);
    detail::check_resolution(R);

    std::vector<std::uint64_t> members;
    BoundednessReport report;
    for (unsigned s = min_s; s <= max_s; ++s) {
        report.endpoint_counts.push_back(family_block_set(fam, s).cardinality);
        for (std::uint64_t n : family_members(fam, s)) members.push_back(n);
    }

    report.pass = true;
    report.max_statistic = 0;
    for (std::uint64_t seed = 0; seed < seed_count; ++seed) {
        Atom a = random_atom(seed, support_level, make_rational(1, 2));
        if (a.f.resolution() < R) a.f = a.f.lift(R);
        BoundednessRow row;
        row.support_level = support_level;
        row.seed = seed;
        row.family = family_name(fam);
        row.statistic = atom_statistic(a, members, support_level);
        row.pass = !frozen_bound || row.statistic <= *frozen_bound;
        report.max_statistic = std::max(report.max_statistic, row.statistic);
        report.pass = report.pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    report.frozen = frozen_bound;
    return report;
}

}  // namespace wf
