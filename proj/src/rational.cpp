#include "wf/rational.hpp"

#include <cstdlib>
#include <stdexcept>

namespace wf {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational pow2(int e) {
    Rational q;
    if (e >= 0) {
        mpz_class n = 1;
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned>(e));
        q = n;
    } else {
        mpz_class d = 1;
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned>(-e));
        q = make_rational(mpz_class(1), d);
    }
    return q;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpz_class num(text.substr(0, slash));
        mpz_class den(text.substr(slash + 1));
        return make_rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        Rational q{mpz_class(text)};
        return q;
    }
    // Decimal literal: digits '.' digits  ->  exact num / 10^k.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("parse_rational: malformed decimal '" + text + "'");
    mpz_class num(digits);
    mpz_class den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return make_rational(num, den);
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<std::int64_t> to_int64(const Rational& q) {
    if (q.get_den() != 1) return std::nullopt;
    const mpz_class& n = q.get_num();
    if (!n.fits_slong_p()) return std::nullopt;  // long == int64 on this ABI
    return static_cast<std::int64_t>(n.get_si());
}

std::optional<Int64View> int64_view(std::span<const Rational> values, int limit_bits) {
    Int64View view;
    view.den = 1;
    for (const Rational& v : values) mpz_lcm(view.den.get_mpz_t(), view.den.get_mpz_t(), v.get_den().get_mpz_t());
    if (mpz_sizeinbase(view.den.get_mpz_t(), 2) > static_cast<size_t>(limit_bits)) return std::nullopt;
    view.nums.reserve(values.size());
    mpz_class scaled;
    for (const Rational& v : values) {
        mpz_divexact(scaled.get_mpz_t(), view.den.get_mpz_t(), v.get_den().get_mpz_t());
        scaled *= v.get_num();
        if (mpz_sizeinbase(scaled.get_mpz_t(), 2) > static_cast<size_t>(limit_bits) || !scaled.fits_slong_p())
            return std::nullopt;
        view.nums.push_back(static_cast<std::int64_t>(scaled.get_si()));
    }
    return view;
}

}  // namespace wf
