#include "wf/grid.hpp"

#include "wf/simd.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wf {

namespace detail {

void check_resolution(unsigned M) {
    if (M > kMaxResolution)
        throw std::domain_error("resolution " + std::to_string(M) + " exceeds ceiling " +
                                std::to_string(kMaxResolution));
}

}  // namespace detail

namespace {

bool parity(std::uint64_t x) { return std::popcount(x) & 1; }

void check_same_resolution(unsigned a, unsigned b, const char* what) {
    if (a != b) throw std::domain_error(std::string(what) + ": resolutions differ");
}

// In-place unnormalized Walsh-Hadamard butterflies on rationals (reference path).
void hadamard_rational(std::vector<Rational>& v) {
    const std::size_t n = v.size();
    Rational a, b;
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t base = 0; base < n; base += 2 * h) {
            for (std::size_t j = base; j < base + h; ++j) {
                a = v[j];
                b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

// Exact transform of a rational vector: unnormalized Hadamard, then * scale.
// Tries the common-denominator int64 lane first; the result is identical on
// either path.
std::vector<Rational> hadamard_scaled(const std::vector<Rational>& in, const Rational& scale,
                                      TransformPath path) {
    const unsigned M = static_cast<unsigned>(std::countr_zero(in.size()));
    std::vector<Rational> out;
    if (path != TransformPath::rational) {
        // After M doubling stages the entries grow by at most 2^M, so int64
        // is safe when numerators (and the common denominator) fit 62-M bits.
        auto view = int64_view(std::span<const Rational>(in.data(), in.size()),
                               static_cast<int>(62 - M));
        if (view) {
            simd::hadamard(std::span<std::int64_t>(view->nums));
            out.reserve(in.size());
            const Rational unit = make_rational(mpz_class(1), view->den) * scale;
            for (std::int64_t n : view->nums) out.push_back(Rational(static_cast<long>(n)) * unit);
            return out;
        }
        if (path == TransformPath::int64)
            throw std::domain_error("int64 transform path unavailable for these values");
    }
    out = in;
    hadamard_rational(out);
    if (scale != 1)
        for (Rational& q : out) q *= scale;
    return out;
}

}  // namespace

GridFunction::GridFunction(unsigned resolution) : resolution_(resolution) {
    detail::check_resolution(resolution);
    values_.assign(std::size_t{1} << resolution, Rational(0));
}

GridFunction::GridFunction(unsigned resolution, std::vector<Rational> values)
    : resolution_(resolution), values_(std::move(values)) {
    detail::check_resolution(resolution);
    if (values_.size() != (std::size_t{1} << resolution))
        throw std::domain_error("GridFunction: value count does not match resolution");
    for (Rational& q : values_) q.canonicalize();
}

GridFunction GridFunction::constant(unsigned resolution, const Rational& c) {
    GridFunction f(resolution);
    for (auto& v : f.values_) v = c;
    return f;
}

GridFunction GridFunction::interval_indicator(unsigned resolution, unsigned level, std::uint64_t base) {
    if (level > resolution) throw std::domain_error("interval_indicator: level exceeds resolution");
    GridFunction f(resolution);
    const std::uint64_t mask = (level == 0) ? 0 : ((std::uint64_t{1} << level) - 1);
    base &= mask;
    for (std::size_t i = 0; i < f.size(); ++i)
        if ((i & mask) == base) f.values_[i] = 1;
    return f;
}

GridFunction& GridFunction::operator+=(const GridFunction& g) {
    check_same_resolution(resolution_, g.resolution_, "operator+=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += g.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& g) {
    check_same_resolution(resolution_, g.resolution_, "operator-=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= g.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(const Rational& c) {
    for (Rational& v : values_) v *= c;
    return *this;
}

GridFunction operator+(GridFunction f, const GridFunction& g) { return f += g; }
GridFunction operator-(GridFunction f, const GridFunction& g) { return f -= g; }
GridFunction operator*(const Rational& c, GridFunction f) { return f *= c; }

GridFunction GridFunction::abs() const {
    GridFunction r = *this;
    for (Rational& v : r.values_)
        if (v < 0) v = -v;
    return r;
}

Rational GridFunction::integral() const {
    Rational s(0);
    for (const Rational& v : values_) s += v;
    return s * pow2(-static_cast<int>(resolution_));
}

Rational GridFunction::max_abs() const {
    Rational m(0);
    for (const Rational& v : values_) {
        Rational a = v < 0 ? Rational(-v) : v;
        if (a > m) m = a;
    }
    return m;
}

GridFunction GridFunction::lift(unsigned finer) const {
    if (finer < resolution_) throw std::domain_error("lift: target resolution is coarser");
    GridFunction r(finer);
    const std::uint64_t mask = (std::uint64_t{1} << resolution_) - 1;
    for (std::size_t i = 0; i < r.size(); ++i) r.values_[i] = values_[i & mask];
    return r;
}

GridFunction GridFunction::coarsen(unsigned coarser) const {
    if (coarser > resolution_) throw std::domain_error("coarsen: target resolution is finer");
    GridFunction r(coarser);
    const unsigned drop = resolution_ - coarser;
    const Rational w = pow2(-static_cast<int>(drop));
    for (std::size_t i = 0; i < r.size(); ++i) {
        Rational s(0);
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << drop); ++j)
            s += values_[i | (j << coarser)];
        r.values_[i] = s * w;
    }
    return r;
}

namespace {

void write_csv_table(std::ostream& out, const std::vector<Rational>& vals) {
    out << "coset_index,numerator,denominator\n";
    for (std::size_t i = 0; i < vals.size(); ++i)
        out << i << ',' << vals[i].get_num().get_str() << ',' << vals[i].get_den().get_str() << '\n';
}

std::vector<Rational> read_csv_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "coset_index,numerator,denominator")
        throw std::invalid_argument("csv: missing or malformed header");
    std::vector<Rational> vals;
    std::size_t expect = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string idx, num, den;
        if (!std::getline(row, idx, ',') || !std::getline(row, num, ',') || !std::getline(row, den))
            throw std::invalid_argument("csv: malformed row '" + line + "'");
        if (std::stoull(idx) != expect)
            throw std::invalid_argument("csv: rows out of order at index " + idx);
        vals.push_back(make_rational(mpz_class(num), mpz_class(den)));
        ++expect;
    }
    if (vals.empty() || (vals.size() & (vals.size() - 1)) != 0)
        throw std::invalid_argument("csv: row count must be a nonzero power of two");
    return vals;
}

}  // namespace

void GridFunction::write_csv(std::ostream& out) const { write_csv_table(out, values_); }

GridFunction GridFunction::read_csv(std::istream& in) {
    auto vals = read_csv_table(in);
    const unsigned M = static_cast<unsigned>(std::countr_zero(vals.size()));
    return GridFunction(M, std::move(vals));
}

CoeffVector::CoeffVector(unsigned resolution) : resolution_(resolution) {
    detail::check_resolution(resolution);
    coeffs_.assign(std::size_t{1} << resolution, Rational(0));
}

CoeffVector::CoeffVector(unsigned resolution, std::vector<Rational> coeffs)
    : resolution_(resolution), coeffs_(std::move(coeffs)) {
    detail::check_resolution(resolution);
    if (coeffs_.size() != (std::size_t{1} << resolution))
        throw std::domain_error("CoeffVector: coefficient count does not match resolution");
    for (Rational& q : coeffs_) q.canonicalize();
}

void CoeffVector::write_csv(std::ostream& out) const { write_csv_table(out, coeffs_); }

CoeffVector CoeffVector::read_csv(std::istream& in) {
    auto vals = read_csv_table(in);
    const unsigned M = static_cast<unsigned>(std::countr_zero(vals.size()));
    return CoeffVector(M, std::move(vals));
}

GridFunction walsh(std::uint64_t n, unsigned M) {
    detail::check_resolution(M);
    if (M >= 64 || n >= (std::uint64_t{1} << M))
        throw std::domain_error("walsh: index " + std::to_string(n) +
                                " not measurable at resolution " + std::to_string(M));
    GridFunction f(M);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = parity(n & i) ? -1 : 1;
    return f;
}

CoeffVector fwht(const GridFunction& f, TransformPath path) {
    auto coeffs = hadamard_scaled(f.values(), pow2(-static_cast<int>(f.resolution())), path);
    return CoeffVector(f.resolution(), std::move(coeffs));
}

GridFunction inverse_fwht(const CoeffVector& c, TransformPath path) {
    auto values = hadamard_scaled(c.coeffs(), Rational(1), path);
    return GridFunction(c.resolution(), std::move(values));
}

GridFunction translate(const GridFunction& f, std::uint64_t t) {
    if (t >= f.size()) throw std::domain_error("translate: shift outside the group grid");
    GridFunction r(f.resolution());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i ^ t];
    return r;
}

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
    check_same_resolution(f.resolution(), g.resolution(), "convolve");
    CoeffVector cf = fwht(f);
    CoeffVector cg = fwht(g);
    std::vector<Rational> prod(cf.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = cf[i] * cg[i];
    return inverse_fwht(CoeffVector(f.resolution(), std::move(prod)));
}

namespace {

bool is_positive_integer(const Rational& p) { return p.get_den() == 1 && p.get_num() > 0; }

bool is_zero_one_valued(const GridFunction& f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Rational& v = f[i];
        if (v != 0 && v != 1 && v != -1) return false;
    }
    return true;
}

Rational rational_pow_ui(const Rational& base, unsigned long e) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    return make_rational(num, den);
}

long double to_long_double(const Rational& q) { return static_cast<long double>(mpq_get_d(q.get_mpq_t())); }

// Distinct |values| with the exact measure of {|f| >= v}, descending in v.
std::vector<std::pair<Rational, Rational>> upper_level_measures(const GridFunction& f) {
    std::map<Rational, std::size_t> counts;  // |v| -> cell count
    for (std::size_t i = 0; i < f.size(); ++i) {
        Rational a = f[i] < 0 ? Rational(-f[i]) : f[i];
        if (a != 0) ++counts[a];
    }
    std::vector<std::pair<Rational, Rational>> out;
    std::size_t cumulative = 0;
    const Rational cell = pow2(-static_cast<int>(f.resolution()));
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
        cumulative += it->second;
        out.emplace_back(it->first, Rational(static_cast<long>(cumulative)) * cell);
    }
    return out;
}

void check_exponent(const Rational& p) {
    if (p <= 0) throw std::domain_error("quasinorm exponent must be positive");
}

}  // namespace

Rational lp_pth_power(const GridFunction& f, const Rational& p) {
    check_exponent(p);
    if (is_positive_integer(p) && p.get_num().fits_ulong_p()) {
        const unsigned long e = p.get_num().get_ui();
        Rational acc(0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            Rational a = f[i] < 0 ? Rational(-f[i]) : f[i];
            acc += rational_pow_ui(a, e);
        }
        return acc * pow2(-static_cast<int>(f.resolution()));
    }
    if (is_zero_one_valued(f)) {
        long support = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] != 0) ++support;
        return Rational(support) * pow2(-static_cast<int>(f.resolution()));
    }
    throw std::domain_error("lp_pth_power: no exact evaluation for this exponent/value set");
}

double lp_quasinorm(const GridFunction& f, const Rational& p) {
    check_exponent(p);
    const Rational inv_p = Rational(1) / p;
    try {
        Rational s = lp_pth_power(f, p);
        if (inv_p.get_den() == 1 && inv_p.get_num().fits_ulong_p())
            return mpq_get_d(rational_pow_ui(s, inv_p.get_num().get_ui()).get_mpq_t());
        return static_cast<double>(powl(to_long_double(s), to_long_double(inv_p)));
    } catch (const std::domain_error&) {
        const long double pe = to_long_double(p);
        long double acc = 0.0L, comp = 0.0L;  // Kahan
        for (std::size_t i = 0; i < f.size(); ++i) {
            const long double term = powl(fabsl(to_long_double(f[i])), pe);
            const long double y = term - comp;
            const long double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        acc = ldexpl(acc, -static_cast<int>(f.resolution()));
        return static_cast<double>(powl(acc, 1.0L / pe));
    }
}

Rational weak_lp_pth_power(const GridFunction& f, const Rational& p) {
    check_exponent(p);
    const auto levels = upper_level_measures(f);
    if (levels.empty()) return Rational(0);
    const bool int_p = is_positive_integer(p) && p.get_num().fits_ulong_p();
    if (!int_p && !is_zero_one_valued(f))
        throw std::domain_error("weak_lp_pth_power: no exact evaluation for this exponent/value set");
    Rational best(0);
    for (const auto& [v, mu] : levels) {
        const Rational cand = (int_p ? rational_pow_ui(v, p.get_num().get_ui()) : Rational(1)) * mu;
        if (cand > best) best = cand;
    }
    return best;
}

double weak_lp(const GridFunction& f, const Rational& p) {
    check_exponent(p);
    const Rational inv_p = Rational(1) / p;
    try {
        Rational s = weak_lp_pth_power(f, p);
        if (inv_p.get_den() == 1 && inv_p.get_num().fits_ulong_p())
            return mpq_get_d(rational_pow_ui(s, inv_p.get_num().get_ui()).get_mpq_t());
        return static_cast<double>(powl(to_long_double(s), to_long_double(inv_p)));
    } catch (const std::domain_error&) {
        const long double pe = to_long_double(p);
        long double best = 0.0L;
        for (const auto& [v, mu] : upper_level_measures(f))
            best = std::max(best, powl(to_long_double(v), pe) * to_long_double(mu));
        return static_cast<double>(powl(best, 1.0L / pe));
    }
}

std::vector<CoverPiece> complement_cover(unsigned M) {
    detail::check_resolution(M);
    if (M == 0) throw std::domain_error("complement_cover: resolution must be positive");
    std::vector<CoverPiece> pieces;
    for (unsigned l = 1; l < M; ++l) {
        for (unsigned k = 0; k < l; ++k) {
            CoverPiece p;
            p.k = k;
            p.l = l;
            p.tail = false;
            const std::uint64_t base = (std::uint64_t{1} << k) | (std::uint64_t{1} << l);
            const std::uint64_t mask = (std::uint64_t{1} << (l + 1)) - 1;
            for (std::uint64_t i = 0; i < (std::uint64_t{1} << M); ++i)
                if ((i & mask) == base) p.cosets.push_back(i);
            p.measure = pow2(-static_cast<int>(l + 1));
            pieces.push_back(std::move(p));
        }
    }
    for (unsigned k = 0; k < M; ++k) {
        CoverPiece p;
        p.k = k;
        p.l = M;
        p.tail = true;
        p.cosets.push_back(std::uint64_t{1} << k);
        p.measure = pow2(-static_cast<int>(M));
        pieces.push_back(std::move(p));
    }
    return pieces;
}

}  // namespace wf
