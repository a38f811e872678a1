#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "clonecert/cert.hpp"
#include "clonecert/rational.hpp"

namespace clonecert::counting {

// One certified inequality.  Sides are exact rationals or directed-rounded
// log2 brackets; the verdict is asserted only when the adversarial rounding
// still satisfies the strict inequality.  `slack` is the log2 gap between
// the sides (negative when the inequality fails).
struct BoundCertificate {
    std::string name;
    Json inputs = Json::object();
    Json lhs;
    Json rhs;
    bool verdict = false;
    std::optional<RatInterval> slack;
    Json details = Json::object();

    Json to_json() const;
};

// Probability that a random graph on N vertices with edge probability
// 4N^(eps-1) has fewer than N^(1+eps) edges, bounded via the second moment:
// (J p (1-p)) / (J p - N^(1+eps))^2 with J = N(N-1)/2, compared to 1/2.
// Throws DegenerateDenominator when J p <= N^(1+eps) (exactly when N <= 2)
// and PreconditionViolated when p is not a probability.
BoundCertificate chebyshev_edge_bound(const BigInt& N, const BigRat& eps);

// Union bound over subset sizes k = 1..M for the sparsity failure event,
// in two forms: the exact pre-approximation sum
//   sum_k N^k (k^2)^(2k) (4 N^(eps-1))^(2k)
// and the simplified M * N^(2 eps - 1), both against 1/10.  The top-level
// verdict follows the simplified form; the exact sum and its own verdict
// are reported in details.  M = 0 is the empty sum.
BoundCertificate sparse_union_bound(const BigInt& N, const BigRat& eps, std::uint64_t M);

// Union bound sum_{k=1}^{N_prev^2} N^k p^(2k) 2^(k^d) <= 1/2 for the
// hypergraph probability p = 2 (d+1)! N^(eps-1), evaluated in log2 space:
// the summand is convex in k, so the term maximum sits at an endpoint and
// the sum is bounded by count * max term.  Also reports the sufficient
// per-term condition N^k p^(2k) < 1 / (N_prev^2 * 2^((N_prev^2)^d)).
BoundCertificate hyper_union_bound(const BigInt& N_prev, const BigInt& N, std::uint64_t d,
                                   const BigRat& eps);

// log2 of the representability count
//   t = (kN)^((kN)^d k) * k (kN)^(3 N log2(N) (d+1) k) * (kN)^(3 N log2(N) k)
// as a directed bracket; a point interval when every log2 involved is exact
// (N and k powers of two).
RatInterval representability_count_t(const BigInt& N, std::uint64_t k, std::uint64_t d);

// Is N k-large: log2(t) < N^(d+eps) in log2 space.  Requires the standing
// assumption k <= log2(N) (2^k <= N), else AssumptionViolated.
BoundCertificate is_k_large(const BigInt& N, std::uint64_t k, std::uint64_t d,
                            const BigRat& eps);

// Depth calculus at a ladder level: requires 6^depth < 2^ell (else
// DepthTooLarge), certifies 6^depth * N_ell < N_ell^(4/3) via the exact
// integer form 6^(3 depth) < N_ell.  The ladder-position fact ell <= N_prev
// is recorded in details but does not gate the verdict.
BoundCertificate term_modesty_certificate(std::uint64_t depth, std::uint64_t ell,
                                          const BigInt& N_ell, const BigInt& N_prev);

} // namespace clonecert::counting
