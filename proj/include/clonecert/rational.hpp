#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "clonecert/errors.hpp"

namespace clonecert {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Parse "p/q" (or a bare integer) into an exact rational.  Used for every
// epsilon-style flag so certificates never depend on float parsing.
BigRat parse_rational(const std::string& text);

// Canonical "p/q" rendering (always with the slash, denominator positive).
std::string format_rational(const BigRat& value);

// base^exp for exp >= 0.
BigInt ipow(const BigInt& base, std::uint64_t exp);

// floor(x^(1/k)) for x >= 0, k >= 1 (Newton iteration, exact).
BigInt iroot_floor(const BigInt& x, unsigned k);

BigInt floor_div(const BigInt& num, const BigInt& den);
BigInt ceil_div(const BigInt& num, const BigInt& den);

BigInt floor_rat(const BigRat& value);
BigInt ceil_rat(const BigRat& value);

// Closed rational interval [lo, hi] with directed-rounded arithmetic.  The
// invariant is containment: if the true value of each operand lies in its
// interval, the true value of the result lies in the result interval.
struct RatInterval {
    BigRat lo;
    BigRat hi;

    RatInterval() = default;
    RatInterval(BigRat both) : lo(both), hi(std::move(both)) {}
    RatInterval(BigRat l, BigRat h);

    bool is_point() const { return lo == hi; }
    BigRat width() const { return hi - lo; }

    RatInterval operator+(const RatInterval& o) const;
    RatInterval operator-(const RatInterval& o) const;
    RatInterval operator*(const RatInterval& o) const;
    // Requires 0 strictly outside o.
    RatInterval operator/(const RatInterval& o) const;

    // Three-way comparison against an exact rational; nullopt if undecided.
    std::optional<bool> provably_less(const BigRat& bound) const;
    std::optional<bool> provably_leq(const BigRat& bound) const;
};

// Bracket of x^(num/den) for a positive rational x and integer num, den >= 1.
// Width shrinks as 2^-prec_bits.  Exact when the power is rational at the
// requested precision (e.g. 256^(1/2)).
RatInterval pow_bracket(const BigRat& x, const BigInt& num, const BigInt& den,
                        unsigned prec_bits = 96);

// Rigorous dyadic bracket of log2(x), x > 0: lo <= log2(x) <= hi with
// hi - lo <= 2^(1-frac_bits) or so.  Both endpoints are dyadic rationals.
RatInterval log2_bracket(const BigRat& x, unsigned frac_bits = 48);

// Number of bits of n (>=1 -> msb index + 1); 0 for n = 0.
unsigned bit_length(const BigInt& n);

} // namespace clonecert
