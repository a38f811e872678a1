#include "clonecert/counting.hpp"

#include <algorithm>

namespace clonecert::counting {

namespace {

// eps = p/q with 0 < eps < 1/2, q fitting the bracketing routines.
std::pair<BigInt, BigInt> eps_parts(const BigRat& eps) {
    if (eps <= 0 || eps >= BigRat(1, 2))
        throw EpsOutOfRange("epsilon must lie strictly between 0 and 1/2, got " +
                            format_rational(eps));
    return {numerator(eps), denominator(eps)};
}

Json log2_json(const RatInterval& iv) {
    Json j;
    j["log2_lower"] = format_rational(iv.lo);
    j["log2_upper"] = format_rational(iv.hi);
    return j;
}

// max of two intervals, endpoint-wise (contains max(a, b)).
RatInterval interval_max(const RatInterval& a, const RatInterval& b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

BigInt factorial(std::uint64_t n) {
    BigInt f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

Json BoundCertificate::to_json() const {
    Json j;
    j["kind"] = "bound";
    j["name"] = name;
    j["inputs"] = inputs;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["verdict"] = verdict;
    if (slack) j["slack"] = log2_json(*slack);
    if (!details.empty()) j["details"] = details;
    return j;
}

BoundCertificate chebyshev_edge_bound(const BigInt& N, const BigRat& eps) {
    auto [p_num, q] = eps_parts(eps);
    BoundCertificate c;
    c.name = "chebyshev-edge";
    c.inputs["N"] = big_to_json(N);
    c.inputs["eps"] = format_rational(eps);
    if (N < 1) throw PreconditionViolated("chebyshev_edge_bound needs N >= 1");

    // J p - N^(1+eps) = (N-2) N^eps exactly, so the denominator degenerates
    // precisely when N <= 2.
    if (N <= 2)
        throw DegenerateDenominator("expected edge count J*p does not exceed the threshold "
                                    "N^(1+eps) for N = " + N.str());
    // p = 4 N^(eps-1) must be a probability: 4^q < N^(q-p).
    if (ipow(4, (std::uint64_t)q) >= ipow(N, (std::uint64_t)(q - p_num)))
        throw PreconditionViolated("p = 4N^(eps-1) is not in (0,1) for N = " + N.str());

    BigInt J = N * (N - 1) / 2;
    RatInterval p = RatInterval(BigRat(4)) * pow_bracket(BigRat(N), p_num - q, q);
    RatInterval mu = RatInterval(BigRat(J)) * p;
    RatInterval threshold = pow_bracket(BigRat(N), q + p_num, q);
    RatInterval gap = mu - threshold;
    RatInterval bound = mu * (RatInterval(BigRat(1)) - p) / (gap * gap);

    c.lhs = interval_to_json(bound);
    c.rhs = "1/2";
    c.verdict = bound.provably_less(BigRat(1, 2)).value_or(false);
    c.slack = {log2_bracket(BigRat(1, 2) / bound.hi).lo,
               log2_bracket(BigRat(1, 2) / bound.lo).hi};
    c.details["p"] = interval_to_json(p);
    c.details["expected_edges"] = interval_to_json(mu);
    c.details["threshold"] = interval_to_json(threshold);
    return c;
}

BoundCertificate sparse_union_bound(const BigInt& N, const BigRat& eps, std::uint64_t M) {
    auto [p_num, q] = eps_parts(eps);
    if (N < 2) throw PreconditionViolated("sparse_union_bound needs N >= 2");
    if (M > 100000) throw CapExceeded("sparse_union_bound: M = " + std::to_string(M));
    BoundCertificate c;
    c.name = "sparse-union";
    c.inputs["N"] = big_to_json(N);
    c.inputs["eps"] = format_rational(eps);
    c.inputs["M"] = M;

    RatInterval sum(BigRat(0));
    for (std::uint64_t k = 1; k <= M; ++k) {
        BigInt coeff = ipow(BigInt(k) * k, 2 * k) * ipow(4, 2 * k);
        RatInterval term =
            RatInterval(BigRat(coeff)) * pow_bracket(BigRat(N), BigInt(k) * (2 * p_num - q), q);
        sum = sum + term;
    }
    RatInterval simplified =
        RatInterval(BigRat(M)) * pow_bracket(BigRat(N), 2 * p_num - q, q);
    if (M == 0) simplified = RatInterval(BigRat(0));

    c.lhs = interval_to_json(simplified);
    c.rhs = "1/10";
    c.verdict = simplified.provably_less(BigRat(1, 10)).value_or(false);
    if (M > 0)
        c.slack = {log2_bracket(BigRat(1, 10) / simplified.hi).lo,
                   log2_bracket(BigRat(1, 10) / simplified.lo).hi};
    c.details["exact_sum"] = interval_to_json(sum);
    c.details["exact_sum_verdict"] = sum.provably_less(BigRat(1, 10)).value_or(false);
    return c;
}

BoundCertificate hyper_union_bound(const BigInt& N_prev, const BigInt& N, std::uint64_t d,
                                   const BigRat& eps) {
    auto [p_num, q] = eps_parts(eps);
    if (N_prev < 1 || N < 2)
        throw PreconditionViolated("hyper_union_bound needs N_prev >= 1 and N >= 2");
    if (d > 16) throw CapExceeded("hyper_union_bound: d = " + std::to_string(d));
    BigInt coeff = 2 * factorial(d + 1);
    // p = 2 (d+1)! N^(eps-1) in (0,1): coeff^q < N^(q-p).
    if (ipow(coeff, (std::uint64_t)q) >= ipow(N, (std::uint64_t)(q - p_num)))
        throw PreconditionViolated("p = 2(d+1)! N^(eps-1) is not in (0,1)");

    BoundCertificate c;
    c.name = "hyper-union";
    c.inputs["N_prev"] = big_to_json(N_prev);
    c.inputs["N"] = big_to_json(N);
    c.inputs["d"] = d;
    c.inputs["eps"] = format_rational(eps);

    BigInt K = N_prev * N_prev;
    BigInt Kd = ipow(K, d);
    // log2 of one summand: k*A + k^d, A = ((2p-q)/q) log2 N + 2 log2 c.
    RatInterval log2N = log2_bracket(BigRat(N));
    RatInterval A = RatInterval(BigRat(2 * p_num - q, q)) * log2N +
                    RatInterval(BigRat(2)) * log2_bracket(BigRat(coeff));
    RatInterval L1 = A + RatInterval(BigRat(1));
    RatInterval LK = RatInterval(BigRat(K)) * A + RatInterval(BigRat(Kd));
    // k^d is convex and k*A linear, so the max over k in [1, K] is at an end.
    RatInterval max_term = interval_max(L1, LK);
    RatInterval log2K = log2_bracket(BigRat(K));
    RatInterval log2_sum = log2K + max_term; // sum <= K * max term

    c.lhs = log2_json(log2_sum);
    c.rhs = "1/2";
    c.verdict = log2_sum.provably_less(BigRat(-1)).value_or(false);
    c.slack = RatInterval(BigRat(-1)) - log2_sum;
    c.details["A"] = log2_json(A);
    c.details["term_k1"] = log2_json(L1);
    c.details["term_kmax"] = log2_json(LK);
    c.details["k_max"] = big_to_json(K);

    // Sufficient per-term condition: (N p^2)^k < 1/(K 2^(K^d)) for every k;
    // the left side is linear in k in log2 space, so ends suffice again.
    RatInterval mono = interval_max(A, RatInterval(BigRat(K)) * A);
    RatInterval suff = mono + log2K + RatInterval(BigRat(Kd));
    c.details["sufficient_condition"] = suff.provably_less(BigRat(0)).value_or(false);
    return c;
}

RatInterval representability_count_t(const BigInt& N, std::uint64_t k, std::uint64_t d) {
    if (k < 1 || N < 2)
        throw PreconditionViolated("representability_count_t needs k >= 1 and N >= 2");
    BigInt kN = BigInt(k) * N;
    RatInterval log2kN = log2_bracket(BigRat(kN));
    RatInterval log2N = log2_bracket(BigRat(N));
    RatInterval threeNlogN = RatInterval(BigRat(3 * N)) * log2N;
    // (kN)^((kN)^d k) * k * (kN)^(3N log N (d+1) k) * (kN)^(3N log N k)
    RatInterval first = RatInterval(BigRat(ipow(kN, d) * k)) * log2kN;
    RatInterval second = log2_bracket(BigRat(k));
    RatInterval third = threeNlogN * RatInterval(BigRat((d + 1) * k)) * log2kN;
    RatInterval fourth = threeNlogN * RatInterval(BigRat(k)) * log2kN;
    return first + second + third + fourth;
}

BoundCertificate is_k_large(const BigInt& N, std::uint64_t k, std::uint64_t d,
                            const BigRat& eps) {
    if (eps <= 0) throw PreconditionViolated("is_k_large needs eps > 0");
    if (k < 1 || N < 2) throw PreconditionViolated("is_k_large needs k >= 1 and N >= 2");
    if (ipow(2, k) > N)
        throw AssumptionViolated("k-largeness assumes k <= log2(N): 2^" + std::to_string(k) +
                                 " > " + N.str());
    BoundCertificate c;
    c.name = "k-large";
    c.inputs["N"] = big_to_json(N);
    c.inputs["k"] = k;
    c.inputs["d"] = d;
    c.inputs["eps"] = format_rational(eps);

    RatInterval lhs = representability_count_t(N, k, d);
    // log2 of the right side 2^(N^(d+eps)): N^(d+eps) = 2^((d+eps) log2 N).
    BigRat expo = BigRat(d) + eps;
    RatInterval rhs_log2 = RatInterval(expo) * log2_bracket(BigRat(N));
    // rhs itself is N^(d+eps); comparing log2(t) < N^(d+eps) requires the
    // exponential: bracket N^(d+eps) directly.
    RatInterval rhs = pow_bracket(BigRat(N), numerator(expo), denominator(expo));

    c.lhs = log2_json(lhs);
    c.rhs = interval_to_json(rhs);
    c.verdict = (lhs - rhs).provably_less(BigRat(0)).value_or(false);
    c.slack = rhs - lhs;
    c.details["rhs_log2"] = log2_json(rhs_log2);
    return c;
}

BoundCertificate term_modesty_certificate(std::uint64_t depth, std::uint64_t ell,
                                          const BigInt& N_ell, const BigInt& N_prev) {
    BigInt six_d = ipow(6, depth);
    if (six_d >= ipow(2, ell))
        throw DepthTooLarge("term depth " + std::to_string(depth) +
                            " needs 6^depth < 2^ell, got ell = " + std::to_string(ell));
    BoundCertificate c;
    c.name = "term-modesty";
    c.inputs["depth"] = depth;
    c.inputs["ell"] = ell;
    c.inputs["N_ell"] = big_to_json(N_ell);
    c.inputs["N_prev"] = big_to_json(N_prev);

    // 6^depth N < N^(4/3)  <=>  6^(3 depth) N^3 < N^4  <=>  6^(3 depth) < N.
    BigInt lhs = ipow(6, 3 * depth);
    c.lhs = big_to_json(lhs);
    c.rhs = big_to_json(N_ell);
    c.verdict = lhs < N_ell;
    if (lhs > 0 && N_ell > 0)
        c.slack = {log2_bracket(BigRat(N_ell) / BigRat(lhs)).lo,
                   log2_bracket(BigRat(N_ell) / BigRat(lhs)).hi};
    c.details["chain_ell_le_prev"] = BigInt(ell) <= N_prev;
    return c;
}

} // namespace clonecert::counting
