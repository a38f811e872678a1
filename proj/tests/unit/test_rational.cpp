#include <doctest.h>

#include "clonecert/rational.hpp"

using namespace clonecert;

TEST_CASE("rational parsing and formatting round-trips") {
    CHECK(parse_rational("1/4") == BigRat(1, 4));
    CHECK(parse_rational("-3/9") == BigRat(-1, 3));
    CHECK(parse_rational("7") == BigRat(7));
    CHECK(format_rational(BigRat(1, 4)) == "1/4");
    CHECK(format_rational(BigRat(-2, 6)) == "-1/3");
    CHECK(format_rational(BigRat(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
    CHECK_THROWS_AS(parse_rational("a/b"), UsageError);
    CHECK_THROWS_AS(parse_rational(""), UsageError);
    CHECK_THROWS_AS(parse_rational("1.5"), UsageError);
}

TEST_CASE("integer powers and roots") {
    CHECK(ipow(BigInt(2), 0) == 1);
    CHECK(ipow(BigInt(2), 63) == (BigInt(1) << 63));
    CHECK(ipow(BigInt(10), 20) == BigInt("100000000000000000000"));
    CHECK(iroot_floor(BigInt(0), 3) == 0);
    CHECK(iroot_floor(BigInt(1), 7) == 1);
    CHECK(iroot_floor(BigInt(8), 3) == 2);
    CHECK(iroot_floor(BigInt(7), 3) == 1);
    CHECK(iroot_floor(BigInt(9), 3) == 2);
    // Exhaustive oracle on a small grid: compare against scanning r.
    for (int x = 0; x <= 200; ++x) {
        for (unsigned k = 1; k <= 5; ++k) {
            BigInt r = iroot_floor(BigInt(x), k);
            CHECK(ipow(r, k) <= x);
            CHECK(ipow(r + 1, k) > x);
        }
    }
    BigInt big = ipow(BigInt(12345), 30);
    CHECK(iroot_floor(big, 30) == 12345);
    CHECK(iroot_floor(big - 1, 30) == 12344);
}

TEST_CASE("floor and ceiling helpers handle signs") {
    CHECK(floor_div(BigInt(7), BigInt(2)) == 3);
    CHECK(floor_div(BigInt(-7), BigInt(2)) == -4);
    CHECK(ceil_div(BigInt(7), BigInt(2)) == 4);
    CHECK(ceil_div(BigInt(-7), BigInt(2)) == -3);
    CHECK(floor_rat(BigRat(-1, 2)) == -1);
    CHECK(ceil_rat(BigRat(-1, 2)) == 0);
}

TEST_CASE("interval arithmetic keeps containment") {
    RatInterval a(BigRat(1, 3), BigRat(1, 2));
    RatInterval b(BigRat(-2), BigRat(3));
    RatInterval s = a + b;
    CHECK(s.lo == BigRat(-5, 3));
    CHECK(s.hi == BigRat(7, 2));
    RatInterval p = a * b;
    CHECK(p.lo == BigRat(-1));
    CHECK(p.hi == BigRat(3, 2));
    CHECK_THROWS_AS(a / b, PreconditionViolated);
    RatInterval q = b / a;
    CHECK(q.lo == BigRat(-6));
    CHECK(q.hi == BigRat(9));
    CHECK(*(a.provably_less(BigRat(1))) == true);
    CHECK(!a.provably_less(BigRat(2, 5)).has_value());
    CHECK(*(a.provably_less(BigRat(1, 4))) == false);
}

TEST_CASE("pow_bracket hits exact rational powers") {
    // 256^(-1/2) = 1/16 exactly.
    RatInterval r = pow_bracket(BigRat(256), BigInt(-1), BigInt(2));
    CHECK(r.is_point());
    CHECK(r.lo == BigRat(1, 16));
    // 27^(2/3) = 9.
    r = pow_bracket(BigRat(27), BigInt(2), BigInt(3));
    CHECK(r.is_point());
    CHECK(r.lo == BigRat(9));
    // Integer exponent stays exact.
    r = pow_bracket(BigRat(3, 7), BigInt(5), BigInt(1));
    CHECK(r.is_point());
    CHECK(r.lo == BigRat(243, 16807));
}

TEST_CASE("pow_bracket brackets irrational powers tightly") {
    // Oracle: x^(n/d) in [lo, hi] iff lo^d <= x^n <= hi^d (positive values).
    auto check_bracket = [](const BigRat& x, long n, unsigned d) {
        RatInterval r = pow_bracket(x, BigInt(n), BigInt(d), 64);
        BigRat xn = n >= 0 ? BigRat(ipow(numerator(x), n)) / BigRat(ipow(denominator(x), n))
                           : BigRat(ipow(denominator(x), -n)) / BigRat(ipow(numerator(x), -n));
        BigRat lo_d = 1, hi_d = 1;
        for (unsigned i = 0; i < d; ++i) {
            lo_d *= r.lo;
            hi_d *= r.hi;
        }
        CHECK(lo_d <= xn);
        CHECK(hi_d >= xn);
        CHECK(r.width() <= BigRat(1, BigInt(1) << 60));
    };
    check_bracket(BigRat(2), 1, 2);
    check_bracket(BigRat(200), 11, 10);
    check_bracket(BigRat(7, 3), -5, 4);
    check_bracket(BigRat(99991), 3, 7);
}

TEST_CASE("log2_bracket is exact on powers of two and tight elsewhere") {
    RatInterval r = log2_bracket(BigRat(1024));
    CHECK(r.lo <= BigRat(10));
    CHECK(r.hi >= BigRat(10));
    CHECK(r.width() <= BigRat(1, BigInt(1) << 40));

    r = log2_bracket(BigRat(1, 8));
    CHECK(r.lo <= BigRat(-3));
    CHECK(r.hi >= BigRat(-3));

    // Oracle for modest precision: lo <= log2(x) <= hi iff 2^(lo*2^b) <= x^(2^b).
    auto check_bracket = [](const BigRat& x, unsigned frac_bits) {
        RatInterval r = log2_bracket(x, frac_bits);
        // Scale endpoints to integers over 2^frac_bits.
        BigRat scale = BigRat(BigInt(1) << frac_bits);
        BigRat lo_num = r.lo * scale;
        BigRat hi_num = r.hi * scale;
        REQUIRE(denominator(lo_num) == 1);
        REQUIRE(denominator(hi_num) == 1);
        // 2^(lo/2^b) <= x  <=>  2^lo <= x^(2^b)  (for b small enough to test).
        auto xpow = BigRat(ipow(numerator(x), 1ULL << frac_bits)) /
                    BigRat(ipow(denominator(x), 1ULL << frac_bits));
        auto two_to = [](const BigInt& e) {
            return e >= 0 ? BigRat(BigInt(1) << e.convert_to<unsigned>())
                          : BigRat(1, BigInt(1) << (-e).convert_to<unsigned>());
        };
        CHECK(two_to(numerator(lo_num)) <= xpow);
        CHECK(two_to(numerator(hi_num)) >= xpow);
    };
    check_bracket(BigRat(3), 8);
    check_bracket(BigRat(10), 8);
    check_bracket(BigRat(7, 5), 8);
    check_bracket(BigRat(1, 3), 8);
    check_bracket(BigRat(1000000007), 8);

    // High precision stays consistent with known digits: log2(10) ~ 3.321928...
    r = log2_bracket(BigRat(10), 48);
    CHECK(r.lo < BigRat(3321929, 1000000));
    CHECK(r.hi > BigRat(3321928, 1000000));
    CHECK(r.width() <= BigRat(1, BigInt(1) << 46));
}

TEST_CASE("log2_bracket handles large composite values") {
    // log2(n!) for n = 50 via summing brackets vs direct bracket.
    BigInt fact = 1;
    RatInterval sum(BigRat(0));
    for (int i = 2; i <= 50; ++i) {
        fact *= i;
        sum = sum + log2_bracket(BigRat(i), 48);
    }
    RatInterval direct = log2_bracket(BigRat(fact), 48);
    CHECK(sum.lo <= direct.hi);
    CHECK(direct.lo <= sum.hi);
}
