#include "wf/hardy.hpp"

#include "wf/dyadic_index.hpp"
#include "wf/frozen.hpp"
#include "wf/kernels.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

namespace wf {

namespace {

void check_exponent_range(const Rational& p) {
    if (p <= 0 || p > 1) throw std::domain_error("atom exponent must lie in (0, 1]");
}

// |v|^a <= 2^{M b} exactly, for p = a/b in lowest terms.
bool sup_bound_holds(const Rational& v, unsigned level, const Rational& p) {
    Rational a = v < 0 ? Rational(-v) : v;
    const unsigned long pa = p.get_num().get_ui();
    const unsigned long pb = p.get_den().get_ui();
    mpz_class lhs_num, lhs_den;
    mpz_pow_ui(lhs_num.get_mpz_t(), a.get_num().get_mpz_t(), pa);
    mpz_pow_ui(lhs_den.get_mpz_t(), a.get_den().get_mpz_t(), pa);
    mpz_class rhs(1);
    rhs <<= level * pb;
    return lhs_num <= rhs * lhs_den;
}

}  // namespace

std::string AtomCheck::violated() const {
    std::string out;
    auto add = [&out](const char* name) {
        if (!out.empty()) out += ",";
        out += name;
    };
    if (!support_ok) add("support");
    if (!mean_ok) add("mean");
    if (!sup_ok) add("sup");
    return out;
}

AtomCheck validate_atom(const Atom& a) {
    check_exponent_range(a.p);
    if (a.f.resolution() < a.level)
        throw std::domain_error("validate_atom: grid coarser than the support level");
    AtomCheck c;
    c.support_ok = true;
    c.sup_ok = true;
    const std::uint64_t mask = (a.level == 0) ? 0 : ((std::uint64_t{1} << a.level) - 1);
    for (std::size_t x = 0; x < a.f.size(); ++x) {
        if ((x & mask) != 0 && a.f[x] != 0) c.support_ok = false;
        if (!sup_bound_holds(a.f[x], a.level, a.p)) c.sup_ok = false;
    }
    c.mean_ok = (a.f.integral() == 0);
    return c;
}

Atom random_atom(std::uint64_t seed, unsigned level, const Rational& p) {
    check_exponent_range(p);
    const unsigned R = level + 3;
    detail::check_resolution(R);
    std::mt19937_64 gen(seed);
    GridFunction f(R);
    std::vector<std::size_t> cells;
    for (std::uint64_t h = 0; h < (std::uint64_t{1} << (R - level)); ++h)
        cells.push_back(static_cast<std::size_t>(h << level));
    // Raw signed rationals (fixed arithmetic on gen() output; distribution
    // classes vary between standard libraries and would break determinism).
    Rational sum(0);
    for (std::size_t c : cells) {
        const long num = static_cast<long>(gen() % 2001) - 1000;
        const long den = static_cast<long>(gen() % 16) + 1;
        f[c] = make_rational(num, den);
        sum += f[c];
    }
    const Rational mean = sum / Rational(static_cast<long>(cells.size()));
    Rational max_abs(0);
    for (std::size_t c : cells) {
        f[c] -= mean;
        Rational a = f[c] < 0 ? Rational(-f[c]) : f[c];
        if (a > max_abs) max_abs = a;
    }
    // Rescale onto 2^{floor(level*b/a)} <= 2^{level/p} so the sup clause holds.
    if (max_abs != 0) {
        const unsigned long pa = p.get_num().get_ui();
        const unsigned long pb = p.get_den().get_ui();
        const int e = static_cast<int>((static_cast<unsigned long>(level) * pb) / pa);
        const Rational scale = pow2(e) / max_abs;
        for (std::size_t c : cells) f[c] *= scale;
    }
    return Atom{p, level, std::move(f)};
}

GridFunction dirichlet_difference_atom(unsigned m, unsigned resolution) {
    if (resolution < m + 1)
        throw std::domain_error("dirichlet_difference_atom: resolution below scale+1");
    GridFunction f = dirichlet(std::uint64_t{1} << (m + 1), resolution);
    f -= dirichlet(std::uint64_t{1} << m, resolution);
    f *= pow2(static_cast<int>(m));
    return f;
}

nlohmann::ordered_json CounterexampleSpec::to_json() const {
    nlohmann::ordered_json j;
    j["alphas"] = alphas;
    j["scales"] = scales;
    j["lambdas"] = nlohmann::ordered_json::array();
    for (const Rational& l : lambdas)
        j["lambdas"].push_back({{"num", l.get_num().get_str()}, {"den", l.get_den().get_str()}});
    return j;
}

CounterexampleSpec CounterexampleSpec::from_json(const nlohmann::json& j) {
    CounterexampleSpec spec;
    spec.alphas = j.at("alphas").get<std::vector<std::uint64_t>>();
    spec.scales = j.at("scales").get<std::vector<unsigned>>();
    for (const auto& l : j.at("lambdas"))
        spec.lambdas.push_back(make_rational(mpz_class(l.at("num").get<std::string>()),
                                             mpz_class(l.at("den").get<std::string>())));
    validate_spec(spec);
    return spec;
}

void validate_spec(const CounterexampleSpec& spec) {
    const std::size_t n = spec.alphas.size();
    if (n == 0 || spec.scales.size() != n || spec.lambdas.size() != n)
        throw std::domain_error("spec: empty or mismatched field lengths");
    Rational square_sum(0);
    for (std::size_t k = 0; k < n; ++k) {
        if (spec.alphas[k] == 0 || top_bit(spec.alphas[k]) != spec.scales[k])
            throw std::domain_error("spec: scale " + std::to_string(spec.scales[k]) +
                                    " is not the top bit of " + std::to_string(spec.alphas[k]));
        if (k > 0 && (spec.alphas[k] <= spec.alphas[k - 1] || spec.scales[k] <= spec.scales[k - 1]))
            throw std::domain_error("spec: indices and scales must be strictly increasing");
        if (spec.lambdas[k] <= 0 || spec.lambdas[k] > 1)
            throw std::domain_error("spec: weights must lie in (0, 1]");
        square_sum += spec.lambdas[k] * spec.lambdas[k];
    }
    if (square_sum > frozen::kWeightSquareSumBound)
        throw std::domain_error("spec: weight square sum exceeds the summability bound");
}

Martingale martingale_from(const GridFunction& densest) {
    Martingale F;
    for (unsigned n = 0; n < densest.resolution(); ++n) F.levels.push_back(densest.coarsen(n));
    F.levels.push_back(densest);
    return F;
}

Martingale assemble_martingale(const CounterexampleSpec& spec, unsigned N) {
    validate_spec(spec);
    detail::check_resolution(N);
    if (N < spec.scales.front() + 1)
        throw std::domain_error("assemble_martingale: top level below the first scale");
    Martingale F;
    for (unsigned A = 0; A <= N; ++A) {
        GridFunction level(A);
        for (std::size_t k = 0; k < spec.size(); ++k) {
            if (spec.scales[k] >= A) break;  // scales increase
            GridFunction a = dirichlet_difference_atom(spec.scales[k], A);
            a *= spec.lambdas[k];
            level += a;
        }
        F.levels.push_back(std::move(level));
    }
    return F;
}

GridFunction maximal_function(const Martingale& F) {
    if (F.levels.empty()) throw std::domain_error("maximal_function: empty martingale");
    const unsigned R = F.densest().resolution();
    GridFunction out(R);
    for (std::size_t x = 0; x < out.size(); ++x) {
        Rational best(0);
        for (const GridFunction& level : F.levels) {
            const std::uint64_t mask = (level.resolution() == 0)
                                           ? 0
                                           : ((std::uint64_t{1} << level.resolution()) - 1);
            Rational v = level[x & mask];
            if (v < 0) v = -v;
            if (v > best) best = v;
        }
        out[x] = best;
    }
    return out;
}

double hardy_quasinorm(const Martingale& F, const Rational& p) {
    return lp_quasinorm(maximal_function(F), p);
}

double atomic_certificate(const CounterexampleSpec& spec, const Rational& p) {
    const double pe = mpq_get_d(p.get_mpq_t());
    double sum = 0.0;
    for (const Rational& l : spec.lambdas) sum += std::pow(mpq_get_d(l.get_mpq_t()), pe);
    return sum;
}

bool partial_sum_formula_check(const Martingale& F, const CounterexampleSpec& spec, std::size_t k,
                               std::uint64_t j) {
    if (k >= spec.size()) throw std::domain_error("partial_sum_formula_check: no such scale");
    const unsigned m = spec.scales[k];
    const std::uint64_t pow_m = std::uint64_t{1} << m;
    if (j < pow_m || j > spec.alphas[k])
        throw std::domain_error("partial_sum_formula_check: index outside [2^scale, alpha]");
    const GridFunction& f = F.densest();
    const unsigned R = f.resolution();
    GridFunction lhs = partial_sum(f, j);
    GridFunction rhs = partial_sum(f, pow_m);
    GridFunction d = dirichlet(j, R);
    d -= dirichlet(pow_m, R);
    d *= pow2(static_cast<int>(m)) * spec.lambdas[k];
    rhs += d;
    return lhs == rhs;
}

void write_martingale_csv(const Martingale& F, const std::string& prefix) {
    for (std::size_t n = 0; n < F.levels.size(); ++n) {
        std::ofstream out(prefix + "level" + std::to_string(n) + ".csv");
        if (!out) throw std::runtime_error("write_martingale_csv: cannot open output file");
        F.levels[n].write_csv(out);
    }
}

}  // namespace wf
