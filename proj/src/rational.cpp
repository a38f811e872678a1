#include "clonecert/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cctype>

namespace clonecert {

namespace {

BigInt parse_integer(const std::string& text) {
    if (text.empty()) throw UsageError("empty integer literal");
    std::size_t start = (text[0] == '+' || text[0] == '-') ? 1 : 0;
    if (start == text.size()) throw UsageError("sign without digits: " + text);
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw UsageError("malformed integer literal: " + text);
    }
    return BigInt(text);
}

} // namespace

BigRat parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return BigRat(parse_integer(text));
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw UsageError("zero denominator: " + text);
    return BigRat(num, den);
}

std::string format_rational(const BigRat& value) {
    BigInt den = denominator(value);
    if (den == 1) return numerator(value).str();
    return numerator(value).str() + "/" + den.str();
}

BigInt ipow(const BigInt& base, std::uint64_t exp) {
    BigInt result = 1;
    BigInt b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return result;
}

unsigned bit_length(const BigInt& n) {
    if (n == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
}

BigInt iroot_floor(const BigInt& x, unsigned k) {
    if (x < 0) throw UsageError("iroot_floor of negative value");
    if (k == 0) throw UsageError("iroot_floor with k = 0");
    if (k == 1 || x <= 1) return x;
    unsigned bits = bit_length(x);
    BigInt r = BigInt(1) << ((bits + k - 1) / k);
    // Newton for r_{t+1} = ((k-1) r + x / r^(k-1)) / k, descending to the root.
    while (true) {
        BigInt rk1 = ipow(r, k - 1);
        BigInt next = ((k - 1) * r + x / rk1) / k;
        if (next >= r) break;
        r = next;
    }
    while (ipow(r, k) > x) --r;
    while (ipow(r + 1, k) <= x) ++r;
    return r;
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
    if (den == 0) throw UsageError("floor_div by zero");
    BigInt q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
}

BigInt ceil_div(const BigInt& num, const BigInt& den) {
    return -floor_div(-num, den);
}

BigInt floor_rat(const BigRat& value) {
    return floor_div(numerator(value), denominator(value));
}

BigInt ceil_rat(const BigRat& value) {
    return ceil_div(numerator(value), denominator(value));
}

RatInterval::RatInterval(BigRat l, BigRat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw PreconditionViolated("interval endpoints out of order");
}

RatInterval RatInterval::operator+(const RatInterval& o) const {
    return RatInterval(lo + o.lo, hi + o.hi);
}

RatInterval RatInterval::operator-(const RatInterval& o) const {
    return RatInterval(lo - o.hi, hi - o.lo);
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
    BigRat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return RatInterval(std::min(std::min(a, b), std::min(c, d)),
                       std::max(std::max(a, b), std::max(c, d)));
}

RatInterval RatInterval::operator/(const RatInterval& o) const {
    if (o.lo <= 0 && o.hi >= 0)
        throw PreconditionViolated("interval division by interval containing zero");
    BigRat a = lo / o.lo, b = lo / o.hi, c = hi / o.lo, d = hi / o.hi;
    return RatInterval(std::min(std::min(a, b), std::min(c, d)),
                       std::max(std::max(a, b), std::max(c, d)));
}

std::optional<bool> RatInterval::provably_less(const BigRat& bound) const {
    if (hi < bound) return true;
    if (lo >= bound) return false;
    return std::nullopt;
}

std::optional<bool> RatInterval::provably_leq(const BigRat& bound) const {
    if (hi <= bound) return true;
    if (lo > bound) return false;
    return std::nullopt;
}

RatInterval pow_bracket(const BigRat& x, const BigInt& num, const BigInt& den,
                        unsigned prec_bits) {
    if (x <= 0) throw PreconditionViolated("pow_bracket requires a positive base");
    if (den <= 0) throw PreconditionViolated("pow_bracket requires a positive root index");
    if (num == 0) return RatInterval(BigRat(1));
    if (num < 0) return pow_bracket(BigRat(1) / x, -num, den, prec_bits);

    BigInt n = num, d = den;
    BigInt g = gcd(n, d);
    n /= g;
    d /= g;
    if (d > 64) throw PreconditionViolated("pow_bracket root index too large");
    auto nl = n.convert_to<std::uint64_t>();
    auto dl = d.convert_to<unsigned>();

    BigRat y = BigRat(ipow(numerator(x), nl), ipow(denominator(x), nl));
    if (dl == 1) return RatInterval(y);

    const BigInt a = numerator(y);
    const BigInt b = denominator(y);
    BigInt scale = BigInt(1) << (static_cast<unsigned>(dl) * prec_bits);
    BigInt z = (a * scale) / b;
    BigInt r = iroot_floor(z, dl);
    BigRat two_p = BigRat(BigInt(1) << prec_bits);
    if (ipow(r, dl) * b == a * scale) {
        BigRat exact = BigRat(r) / two_p;
        return RatInterval(exact, exact);
    }
    BigInt r2 = iroot_floor(z + 1, dl);
    return RatInterval(BigRat(r) / two_p, BigRat(r2 + 1) / two_p);
}

RatInterval log2_bracket(const BigRat& x, unsigned frac_bits) {
    if (x <= 0) throw PreconditionViolated("log2_bracket requires a positive argument");
    const BigInt a = numerator(x);
    const BigInt b = denominator(x);

    // Integer exponent e with b * 2^e <= a < b * 2^(e+1).
    long e = static_cast<long>(bit_length(a)) - static_cast<long>(bit_length(b));
    auto num_at = [&](long shift) {
        return shift >= 0 ? a : (a << static_cast<unsigned>(-shift));
    };
    auto den_at = [&](long shift) {
        return shift >= 0 ? (b << static_cast<unsigned>(shift)) : b;
    };
    while (num_at(e) < den_at(e)) --e;
    while (num_at(e + 1) >= den_at(e + 1)) ++e;

    const unsigned P = frac_bits + 32;
    const BigInt one = BigInt(1) << P;
    const BigInt two = BigInt(1) << (P + 1);

    // Fixed-point bracket of the mantissa m = x / 2^e in [1, 2).
    BigInt mnum = num_at(e) << P;
    BigInt mden = den_at(e);
    BigInt zl = mnum / mden;
    BigInt zh = (mnum % mden == 0) ? zl : zl + 1;

    // Invariant: zl/2^P <= m^(2^i) * 2^-A <= zh/2^P.
    BigInt A = 0;
    unsigned i = 0;
    bool straddled = false;
    while (i < frac_bits) {
        zl = (zl * zl) >> P;
        zh = ceil_div(zh * zh, one);
        A <<= 1;
        ++i;
        if (zl >= two) {
            A += 1;
            zl >>= 1;
            zh = ceil_div(zh, 2);
        } else if (zh < two) {
            // bit 0, nothing to shift
        } else {
            straddled = true;
            break;
        }
    }

    BigRat scale = BigRat(BigInt(1) << i);
    BigRat lo = BigRat(e) + BigRat(A) / scale;
    // Residual mantissa value is < 2 on clean exit, < 4 + slop after a
    // straddle; when the upper track collapsed to exactly 1 the remaining
    // logarithm is 0 and the bracket closes.
    BigInt hi_ulps = straddled ? 3 : (zh == one ? 0 : 1);
    BigRat hi = BigRat(e) + BigRat(A + hi_ulps) / scale;
    return RatInterval(lo, hi);
}

} // namespace clonecert
