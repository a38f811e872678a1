#include "clonecert/sparse.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "clonecert/seeding.hpp"

namespace clonecert::sparse {

namespace {

constexpr double kProbScale = 9007199254740992.0; // 2^53

struct EpsParts {
    BigInt num;
    BigInt den;
};

EpsParts eps_parts(const BigRat& eps) {
    if (!(eps > 0) || !(eps * 2 < 1))
        throw EpsOutOfRange("eps must lie in (0, 1/2), got " + format_rational(eps));
    return {numerator(eps), denominator(eps)};
}

std::uint64_t small_exp(const BigInt& e) {
    return e.convert_to<std::uint64_t>();
}

BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binom_big(const BigInt& n, int k) {
    if (n < k) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

// Threshold on the 53-bit draw lattice for p = coeff * size^(eps-1).  The
// caller has already excluded p > 1 by the exact power comparison; every
// draw (rng() >> 11) < threshold is then Bernoulli(threshold / 2^53), and
// that rational is exactly what *_p_used reports.
std::uint64_t prob_threshold_u53(const BigInt& coeff, std::int64_t size,
                                 const BigRat& eps) {
    EpsParts e = eps_parts(eps);
    RatInterval iv = pow_bracket(BigRat(size), e.num - e.den, e.den, 80);
    BigRat p = BigRat(coeff) * ((iv.lo + iv.hi) / 2);
    if (p > 1) p = 1;
    if (p < 0) p = 0;
    BigInt t = floor_rat(p * BigRat(BigInt(1) << 53));
    return t.convert_to<std::uint64_t>();
}

void check_probability(const BigInt& coeff, std::int64_t size, const BigRat& eps,
                       const char* what) {
    EpsParts e = eps_parts(eps);
    // p = coeff * size^((a-b)/b) > 1  <=>  coeff^b > size^(b-a)
    if (ipow(coeff, small_exp(e.den)) > ipow(BigInt(size), small_exp(e.den - e.num)))
        throw ProbabilityOverflow(std::string(what) + ": edge probability exceeds 1 at window size " +
                                  std::to_string(size) + ", eps = " + format_rational(eps));
}

std::uint64_t draw53(std::mt19937_64& rng) { return rng() >> 11; }

} // namespace

bool SparseGraph::has_edge(std::int64_t u, std::int64_t v) const {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

void SparseGraph::normalize() {
    for (auto& [u, v] : edges) {
        if (u == v)
            throw PreconditionViolated("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!vertices.contains(u) || !vertices.contains(v))
            throw PreconditionViolated("edge endpoint outside the vertex window");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

Json SparseGraph::to_json() const {
    Json j;
    j["lo"] = vertices.lo;
    j["hi"] = vertices.hi;
    j["eps"] = format_rational(epsilon);
    j["seed"] = seed;
    Json arr = Json::array();
    for (const auto& [u, v] : edges) arr.push_back(Json::array({u, v}));
    j["edges"] = std::move(arr);
    return j;
}

SparseGraph SparseGraph::from_json(const Json& j) {
    SparseGraph g;
    g.vertices = {j.at("lo").get<std::int64_t>(), j.at("hi").get<std::int64_t>()};
    g.epsilon = parse_rational(j.at("eps").get<std::string>());
    g.seed = j.value("seed", std::uint64_t{0});
    for (const auto& e : j.at("edges"))
        g.edges.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>());
    g.normalize();
    return g;
}

void Hypergraph::normalize() {
    for (auto& e : hyperedges) {
        if ((int)e.size() != d + 1)
            throw PreconditionViolated("hyperedge arity mismatch: expected " +
                                       std::to_string(d + 1) + " vertices");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw PreconditionViolated("hyperedge with repeated vertex");
        for (auto v : e)
            if (!vertices.contains(v))
                throw PreconditionViolated("hyperedge vertex outside the window");
    }
    std::sort(hyperedges.begin(), hyperedges.end());
    hyperedges.erase(std::unique(hyperedges.begin(), hyperedges.end()), hyperedges.end());
}

Json Hypergraph::to_json() const {
    Json j;
    j["lo"] = vertices.lo;
    j["hi"] = vertices.hi;
    j["d"] = d;
    j["eps"] = format_rational(epsilon);
    j["seed"] = seed;
    Json arr = Json::array();
    for (const auto& e : hyperedges) arr.push_back(Json(e));
    j["edges"] = std::move(arr);
    return j;
}

Hypergraph Hypergraph::from_json(const Json& j) {
    Hypergraph h;
    h.vertices = {j.at("lo").get<std::int64_t>(), j.at("hi").get<std::int64_t>()};
    h.d = j.at("d").get<int>();
    h.epsilon = parse_rational(j.at("eps").get<std::string>());
    h.seed = j.value("seed", std::uint64_t{0});
    for (const auto& e : j.at("edges"))
        h.hyperedges.push_back(e.get<std::vector<std::int64_t>>());
    h.normalize();
    return h;
}

std::string sparsity_verdict_name(SparsityVerdict v) {
    switch (v) {
        case SparsityVerdict::CertifiedSparse: return "certified-sparse";
        case SparsityVerdict::Violated: return "violated";
        case SparsityVerdict::NotFalsified: return "not-falsified";
    }
    return "?";
}

Json SparsityReport::to_json() const {
    Json j;
    j["k_max"] = k_max;
    j["verdict"] = sparsity_verdict_name(verdict);
    j["method"] = method;
    if (violator) {
        j["violator"] = *violator;
        j["violator_edges"] = violator_edges;
    }
    j["budget_exhausted"] = budget_exhausted;
    j["nodes_visited"] = nodes_visited;
    return j;
}

bool ll_eps(const BigInt& M, const BigInt& N, const BigRat& eps) {
    EpsParts e = eps_parts(eps);
    if (M < 1 || N < 2)
        throw PreconditionViolated("ll_eps needs M >= 1 and N >= 2");
    // M * N^((2p-q)/q) < 1/10  <=>  10^q * M^q < N^(q-2p)   (q > 2p here)
    std::uint64_t q = small_exp(e.den);
    BigInt lhs = ipow(BigInt(10), q) * ipow(M, q);
    BigInt rhs = ipow(N, small_exp(e.den - 2 * e.num));
    return lhs < rhs;
}

BigRat graph_p_used(std::int64_t N, const BigRat& eps) {
    return BigRat(BigInt(prob_threshold_u53(4, N, eps)), BigInt(1) << 53);
}

BigRat hyper_p_used(std::int64_t N, int d, const BigRat& eps) {
    return BigRat(BigInt(prob_threshold_u53(2 * factorial(d + 1), N, eps)),
                  BigInt(1) << 53);
}

SparseGraph random_graph(std::int64_t N, const BigRat& eps, std::uint64_t seed) {
    if (N < 2) throw PreconditionViolated("random_graph needs N >= 2");
    check_probability(4, N, eps, "random_graph");

    SparseGraph g;
    g.vertices = {0, N};
    g.epsilon = eps;
    g.seed = seed;
    const std::uint64_t thresh = prob_threshold_u53(4, N, eps);
    auto rng = make_rng(derive_seed(seed, "graph-edges"));
    for (std::int64_t u = 0; u < N; ++u)
        for (std::int64_t v = u + 1; v < N; ++v)
            if (draw53(rng) < thresh) g.edges.emplace_back(u, v);
    g.normalize();
    return g;
}

Hypergraph random_hypergraph(UniverseWindow window, int d, const BigRat& eps,
                             std::uint64_t seed) {
    if (d < 1) throw PreconditionViolated("random_hypergraph needs d >= 1");
    Hypergraph h;
    h.vertices = window;
    h.d = d;
    h.epsilon = eps;
    h.seed = seed;

    const int r = d + 1;
    const std::int64_t size = window.size();
    if (size < r) return h; // no (d+1)-subsets at all

    const BigInt coeff = 2 * factorial(r);
    check_probability(coeff, size, eps, "random_hypergraph");
    const std::uint64_t thresh = prob_threshold_u53(coeff, size, eps);
    auto rng = make_rng(derive_seed(seed, "hyper-edges"));

    const BigInt candidates = binom_big(size, r);
    if (candidates <= 200000) {
        std::vector<std::int64_t> pick(r);
        for (int i = 0; i < r; ++i) pick[i] = window.lo + i;
        while (true) {
            if (draw53(rng) < thresh) h.hyperedges.push_back(pick);
            // next lexicographic r-combination of the window
            int i = r - 1;
            while (i >= 0 && pick[i] == window.hi - (r - i)) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
        }
    } else {
        // Count-first sampling: the candidate space is too large to sweep.
        if (candidates > (BigInt(1) << 62))
            throw CapExceeded("random_hypergraph: candidate space exceeds 2^62");
        BigRat expected = BigRat(BigInt(thresh), BigInt(1) << 53) * BigRat(candidates);
        if (expected > 5'000'000)
            throw CapExceeded("random_hypergraph: expected hyperedge count too large to materialize");
        std::binomial_distribution<std::int64_t> bin(candidates.convert_to<std::int64_t>(),
                                                     double(thresh) / kProbScale);
        const std::int64_t count = bin(rng);
        std::uniform_int_distribution<std::int64_t> pick(window.lo, window.hi - 1);
        std::set<std::vector<std::int64_t>> chosen;
        while ((std::int64_t)chosen.size() < count) {
            std::set<std::int64_t> s;
            while ((int)s.size() < r) s.insert(pick(rng));
            chosen.emplace(s.begin(), s.end());
        }
        h.hyperedges.assign(chosen.begin(), chosen.end());
    }
    h.normalize();
    return h;
}

namespace {

Certificate edge_count_cert(const char* flavor, std::size_t edge_count, const BigInt& base,
                            const BigRat& eps, int d) {
    EpsParts e = eps_parts(eps);
    std::uint64_t q = small_exp(e.den);
    std::uint64_t p = small_exp(e.num);
    BigInt lhs = ipow(BigInt(edge_count), q);
    BigInt rhs = ipow(base, (std::uint64_t)d * q + p);
    bool pass = lhs > rhs;

    Certificate c;
    c.kind = "edge-count";
    c.inputs["structure"] = flavor;
    c.inputs["edge_count"] = edge_count;
    c.inputs["base"] = big_to_json(base);
    c.inputs["eps"] = format_rational(eps);
    if (d > 1) c.inputs["d"] = d;
    c.details["comparison"] = "|E|^q > B^(dq+p), strict";
    c.details["lhs"] = big_to_json(lhs);
    c.details["rhs"] = big_to_json(rhs);
    c.verdict = pass ? Verdict::Pass : Verdict::Fail;
    return c;
}

} // namespace

Certificate edge_count_check(const SparseGraph& g, const BigRat& eps,
                             std::optional<BigInt> base_override) {
    BigInt base = base_override.value_or(BigInt(g.vertices.size()));
    return edge_count_cert("graph", g.edges.size(), base, eps, 1);
}

Certificate edge_count_check(const Hypergraph& h, const BigRat& eps,
                             std::optional<BigInt> base_override) {
    BigInt base = base_override.value_or(BigInt(h.vertices.size()));
    return edge_count_cert("hypergraph", h.hyperedges.size(), base, eps, h.d);
}

std::pair<SparseGraph, Certificate> las_vegas_sparse_graph(std::int64_t N,
                                                           const BigRat& eps,
                                                           std::uint64_t M,
                                                           std::uint64_t max_retries,
                                                           std::uint64_t seed) {
    if (!ll_eps(BigInt(M), BigInt(N), eps))
        throw PreconditionViolated("las_vegas_sparse_graph: M = " + std::to_string(M) +
                                   " is not << N = " + std::to_string(N) +
                                   " at eps = " + format_rational(eps));

    std::uint64_t edge_failures = 0;
    std::uint64_t sparsity_failures = 0;
    std::uint64_t budget_flags = 0;
    for (std::uint64_t attempt = 0; attempt < max_retries; ++attempt) {
        const std::uint64_t draw_seed = derive_seed(seed, "las-vegas", attempt);
        SparseGraph g = random_graph(N, eps, draw_seed);
        Certificate ec = edge_count_check(g, eps);
        if (!ec.ok()) {
            ++edge_failures;
            continue;
        }
        SparsityReport rep = sparseness_check(g, M, SparsenessMode::Exact);
        if (rep.budget_exhausted) ++budget_flags;
        if (rep.verdict != SparsityVerdict::CertifiedSparse) {
            ++sparsity_failures;
            continue;
        }

        Certificate c;
        c.kind = "las-vegas-sparse-graph";
        c.inputs["N"] = N;
        c.inputs["eps"] = format_rational(eps);
        c.inputs["M"] = M;
        c.inputs["max_retries"] = max_retries;
        c.inputs["seed"] = seed;
        c.details["attempts"] = attempt + 1;
        c.details["edge_count_failures"] = edge_failures;
        c.details["sparsity_failures"] = sparsity_failures;
        c.details["winning_seed"] = draw_seed;
        c.details["edge_count"] = g.edges.size();
        c.details["p_used"] = rat_to_json(graph_p_used(N, eps));
        c.details["sparsity_report"] = rep.to_json();
        c.verdict = Verdict::Pass;
        c.sub.push_back(std::move(ec));
        return {std::move(g), std::move(c)};
    }
    throw RetriesExhausted("las_vegas_sparse_graph: no passing draw in " +
                           std::to_string(max_retries) + " attempts (" +
                           std::to_string(edge_failures) + " edge-count failures, " +
                           std::to_string(sparsity_failures) + " sparsity failures, " +
                           std::to_string(budget_flags) + " budget flags)");
}

std::string export_dot(const SparseGraph& g) {
    std::ostringstream out;
    out << "graph sparse {\n";
    out << "  // vertices [" << g.vertices.lo << ", " << g.vertices.hi << ")\n";
    for (const auto& [u, v] : g.edges) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

std::string export_dot(const Hypergraph& h) {
    std::ostringstream out;
    out << "graph hyper {\n";
    out << "  // vertices [" << h.vertices.lo << ", " << h.vertices.hi << "), "
        << (h.d + 1) << "-uniform\n";
    for (std::size_t i = 0; i < h.hyperedges.size(); ++i) {
        out << "  e" << i << " [shape=point];\n";
        for (auto v : h.hyperedges[i]) out << "  e" << i << " -- " << v << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace clonecert::sparse
