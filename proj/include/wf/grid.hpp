#pragma once

// Exact rational-valued functions on the dyadic group at finite resolution.
//
// A function measurable with respect to the level-M coset algebra is stored
// as its 2^M values, one per coset I_M(x); the coset index is
// i = sum_j x_j 2^j (LSB first), so the group operation is XOR of indices
// and the Haar integral is 2^{-M} * sum of values.
//
// The Walsh functions w_n(x) = (-1)^{popcount(n & i)}, n < 2^M, form an
// orthonormal basis; fwht computes the coefficient vector
//   c[k] = 2^{-M} * sum_i f(i) (-1)^{popcount(k & i)}
// and inverse_fwht evaluates sums f(i) = sum_k c[k] (-1)^{popcount(k & i)}.
// Both are exact; a common-denominator int64 fast lane (see wf/simd.hpp)
// is used automatically when the values fit, with the arbitrary-precision
// rational butterflies as reference and fallback.

#include "wf/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace wf {

inline constexpr unsigned kMaxResolution = 20;  // 2^20 cells; memory guard

namespace detail {
void check_resolution(unsigned M);
}

class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(unsigned resolution);
    GridFunction(unsigned resolution, std::vector<Rational> values);
    static GridFunction constant(unsigned resolution, const Rational& c);
    // Indicator of the coset I_level(base): cells whose low `level` bits
    // agree with base.
    static GridFunction interval_indicator(unsigned resolution, unsigned level,
                                           std::uint64_t base = 0);

    unsigned resolution() const { return resolution_; }
    std::size_t size() const { return values_.size(); }
    const Rational& operator[](std::size_t i) const { return values_[i]; }
    Rational& operator[](std::size_t i) { return values_[i]; }
    const std::vector<Rational>& values() const { return values_; }

    bool operator==(const GridFunction&) const = default;

    GridFunction& operator+=(const GridFunction& g);
    GridFunction& operator-=(const GridFunction& g);
    GridFunction& operator*=(const Rational& c);

    GridFunction abs() const;
    Rational integral() const;
    Rational max_abs() const;

    GridFunction lift(unsigned finer) const;     // repeat values onto a finer grid
    GridFunction coarsen(unsigned coarser) const;  // average over refining cells

    void write_csv(std::ostream& out) const;
    static GridFunction read_csv(std::istream& in);

private:
    unsigned resolution_ = 0;
    std::vector<Rational> values_;
};

GridFunction operator+(GridFunction f, const GridFunction& g);
GridFunction operator-(GridFunction f, const GridFunction& g);
GridFunction operator*(const Rational& c, GridFunction f);

// Walsh spectrum of a resolution-M function: coefficients for indices < 2^M.
class CoeffVector {
public:
    CoeffVector() = default;
    explicit CoeffVector(unsigned resolution);
    CoeffVector(unsigned resolution, std::vector<Rational> coeffs);

    unsigned resolution() const { return resolution_; }
    std::size_t size() const { return coeffs_.size(); }
    const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
    Rational& operator[](std::size_t i) { return coeffs_[i]; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool operator==(const CoeffVector&) const = default;

    void write_csv(std::ostream& out) const;
    static CoeffVector read_csv(std::istream& in);

private:
    unsigned resolution_ = 0;
    std::vector<Rational> coeffs_;
};

// w_n at resolution M; requires n < 2^M (finer indices are not measurable).
GridFunction walsh(std::uint64_t n, unsigned M);

enum class TransformPath { automatic, rational, int64 };

CoeffVector fwht(const GridFunction& f, TransformPath path = TransformPath::automatic);
GridFunction inverse_fwht(const CoeffVector& c, TransformPath path = TransformPath::automatic);

// f(x + t) in the group sense: result[i] = f[i XOR t]; requires t < 2^M.
GridFunction translate(const GridFunction& f, std::uint64_t t);

// (f * g)(x) = integral of f(x + t) g(t) dmu(t); exact via the spectra.
GridFunction convolve(const GridFunction& f, const GridFunction& g);

// Exact value of  2^{-M} * sum |f|^p  (defined when p is a positive integer,
// or when every |value| is 0 or 1 so |v|^p is trivially rational); throws
// std::domain_error otherwise.
Rational lp_pth_power(const GridFunction& f, const Rational& p);

// (2^{-M} sum |f|^p)^{1/p}; exact path taken when available, long-double
// Kahan summation otherwise (relative error well under 1e-12).
double lp_quasinorm(const GridFunction& f, const Rational& p);

// sup_lambda lambda^p * mu(|f| > lambda), scanned exactly over the finite
// value set of |f|; same definedness rules as lp_pth_power.
Rational weak_lp_pth_power(const GridFunction& f, const Rational& p);

// The weak quasinorm (sup above)^{1/p}.
double weak_lp(const GridFunction& f, const Rational& p);

// Disjoint cover of the complement of I_M:
//   I_{l+1}(e_k + e_l) for 0 <= k < l <= M-1, plus the tails I_M(e_k).
struct CoverPiece {
    unsigned k = 0;
    unsigned l = 0;          // l == M marks the tail piece I_M(e_k)
    bool tail = false;
    std::vector<std::uint64_t> cosets;  // indices at resolution M
    Rational measure;
};
std::vector<CoverPiece> complement_cover(unsigned M);

}  // namespace wf
