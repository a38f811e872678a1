#include <doctest.h>

#include <climits>
#include <random>

#include "clonecert/sparse.hpp"
#include "support/oracles.hpp"

using namespace clonecert;
using namespace clonecert::sparse;

namespace {

SparseGraph make_graph(std::int64_t n, std::vector<std::pair<std::int64_t, std::int64_t>> edges,
                       BigRat eps = BigRat(1, 4)) {
    SparseGraph g;
    g.vertices = {0, n};
    g.epsilon = std::move(eps);
    g.edges = std::move(edges);
    g.normalize();
    return g;
}

SparseGraph complete_graph(std::int64_t n, std::int64_t offset = 0, std::int64_t window = 0) {
    SparseGraph g;
    g.vertices = {0, window ? window : offset + n};
    g.epsilon = BigRat(1, 4);
    for (std::int64_t u = 0; u < n; ++u)
        for (std::int64_t v = u + 1; v < n; ++v) g.edges.emplace_back(offset + u, offset + v);
    g.normalize();
    return g;
}

Hypergraph complete_triples(std::int64_t n) {
    Hypergraph h;
    h.vertices = {0, n};
    h.d = 2;
    h.epsilon = BigRat(1, 4);
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = a + 1; b < n; ++b)
            for (std::int64_t c = b + 1; c < n; ++c) h.hyperedges.push_back({a, b, c});
    h.normalize();
    return h;
}

// Independent recount of edges inside a vertex set, straight off the lists.
std::uint64_t count_inside(const std::vector<std::vector<std::int64_t>>& edges,
                           const std::vector<std::int64_t>& members) {
    std::uint64_t cnt = 0;
    for (const auto& e : edges) {
        bool inside = true;
        for (auto v : e) {
            bool found = false;
            for (auto u : members) found = found || u == v;
            inside = inside && found;
        }
        cnt += inside;
    }
    return cnt;
}

std::vector<std::vector<std::int64_t>> as_lists(const SparseGraph& g) {
    std::vector<std::vector<std::int64_t>> out;
    for (auto [u, v] : g.edges) out.push_back({u, v});
    return out;
}

// Smallest size of a violating subset, by exhaustive mask sweep; INT_MAX if
// the structure is sparse outright.
int min_violating_size(std::int64_t n, const std::vector<std::vector<std::int64_t>>& edges) {
    std::vector<std::uint64_t> masks;
    for (const auto& e : edges) {
        std::uint64_t m = 0;
        for (auto v : e) m |= 1ULL << v;
        masks.push_back(m);
    }
    int best = INT_MAX;
    for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
        int size = __builtin_popcountll(mask);
        if (size >= best) continue;
        std::uint64_t cnt = 0;
        for (auto em : masks) cnt += (em & mask) == em;
        if (cnt > 2 * (std::uint64_t)size) best = size;
    }
    return best;
}

} // namespace

TEST_CASE("ll_eps decides M << N exactly") {
    CHECK(ll_eps(1, 256, BigRat(1, 4)));       // 1/16 < 1/10
    CHECK_FALSE(ll_eps(2, 256, BigRat(1, 4))); // 2/16 >= 1/10
    CHECK(ll_eps(6, 200, BigRat(1, 10)));      // 10^10 * 6^10 < 200^8
    CHECK_FALSE(ll_eps(1, 2, BigRat(49, 100)));
    CHECK_FALSE(ll_eps(1, 16, BigRat(1, 4))); // 1/4 >= 1/10

    CHECK_THROWS_AS(ll_eps(1, 16, BigRat(1, 2)), EpsOutOfRange);
    CHECK_THROWS_AS(ll_eps(1, 16, BigRat(0)), EpsOutOfRange);
    CHECK_THROWS_AS(ll_eps(1, 16, BigRat(3, 5)), EpsOutOfRange);
    CHECK_THROWS_AS(ll_eps(0, 16, BigRat(1, 4)), PreconditionViolated);
    CHECK_THROWS_AS(ll_eps(1, 1, BigRat(1, 4)), PreconditionViolated);
}

TEST_CASE("sampling probabilities are exact on the draw lattice") {
    CHECK(graph_p_used(16, BigRat(1, 4)) == BigRat(1, 2));  // 4 * 16^(-3/4)
    CHECK(graph_p_used(256, BigRat(1, 4)) == BigRat(1, 16));
    // d = 1 gives coefficient 2 * 2! = 4, the binary formula.
    CHECK(hyper_p_used(40, 1, BigRat(1, 4)) == graph_p_used(40, BigRat(1, 4)));
}

TEST_CASE("random_graph rejects p > 1 and is reproducible") {
    CHECK_THROWS_AS(random_graph(2, BigRat(1, 4), 0), ProbabilityOverflow);
    CHECK_THROWS_AS(random_graph(6, BigRat(1, 4), 0), ProbabilityOverflow); // 4^4 > 6^3
    CHECK_NOTHROW(random_graph(7, BigRat(1, 4), 0));                        // 4^4 < 7^3

    SparseGraph a = random_graph(30, BigRat(1, 4), 42);
    SparseGraph b = random_graph(30, BigRat(1, 4), 42);
    SparseGraph c = random_graph(30, BigRat(1, 4), 43);
    CHECK(a.edges == b.edges);
    CHECK(a.edges != c.edges);
    CHECK(a.vertices == UniverseWindow{0, 30});
    for (auto [u, v] : a.edges) {
        CHECK(u < v);
        CHECK(a.vertices.contains(u));
        CHECK(a.vertices.contains(v));
    }
}

TEST_CASE("random_hypergraph: sweep path, invariants, determinism") {
    Hypergraph a = random_hypergraph({0, 20}, 2, BigRat(1, 10), 9);
    Hypergraph b = random_hypergraph({0, 20}, 2, BigRat(1, 10), 9);
    CHECK(a.hyperedges == b.hyperedges);
    CHECK(!a.hyperedges.empty()); // p ~ 0.8 on 1140 candidates
    for (const auto& e : a.hyperedges) {
        CHECK(e.size() == 3);
        CHECK(e[0] < e[1]);
        CHECK(e[1] < e[2]);
        CHECK(a.vertices.contains(e[0]));
        CHECK(a.vertices.contains(e[2]));
    }

    // Window too small for any (d+1)-subset: empty, no probability fuss.
    Hypergraph empty = random_hypergraph({5, 7}, 2, BigRat(1, 4), 1);
    CHECK(empty.hyperedges.empty());

    CHECK_THROWS_AS(random_hypergraph({0, 10}, 0, BigRat(1, 4), 1), PreconditionViolated);
    // 12^4 > 4^3: probability above 1.
    CHECK_THROWS_AS(random_hypergraph({0, 4}, 2, BigRat(1, 4), 1), ProbabilityOverflow);
}

TEST_CASE("random_hypergraph: count-first path on a large candidate space") {
    // C(150,3) = 551300 candidates forces the binomial-count path.
    Hypergraph a = random_hypergraph({0, 150}, 2, BigRat(1, 10), 77);
    Hypergraph b = random_hypergraph({0, 150}, 2, BigRat(1, 10), 77);
    CHECK(a.hyperedges == b.hyperedges);
    // p ~ 0.132, expectation ~ 72800; allow a very wide band.
    CHECK(a.hyperedges.size() > 65000);
    CHECK(a.hyperedges.size() < 81000);
    for (const auto& e : a.hyperedges) {
        CHECK(e.size() == 3);
        CHECK(e[0] < e[1]);
        CHECK(e[1] < e[2]);
    }
}

TEST_CASE("edge_count_check compares |E|^q against B^(dq+p) strictly") {
    SparseGraph g16 = complete_graph(16);
    g16.edges.resize(33); // first 33 pairs lexicographically
    CHECK(edge_count_check(g16, BigRat(1, 4)).verdict == Verdict::Pass); // 33^4 > 16^5
    g16.edges.resize(32);
    CHECK(edge_count_check(g16, BigRat(1, 4)).verdict == Verdict::Fail); // 32^4 = 16^5

    SparseGraph empty = make_graph(10, {});
    CHECK(edge_count_check(empty, BigRat(1, 4)).verdict == Verdict::Fail);

    // Ladder-style override: same 20-edge graph on [0,8), measured against 9.
    SparseGraph g8 = complete_graph(8);
    g8.edges.resize(20);
    CHECK(edge_count_check(g8, BigRat(1, 3), BigInt(9)).verdict == Verdict::Pass); // 8000 > 6561
    g8.edges.resize(18);
    CHECK(edge_count_check(g8, BigRat(1, 3), BigInt(9)).verdict == Verdict::Fail); // 5832 < 6561

    // Hypergraph bound |E|^4 > 15^9: threshold between 442 and 443.
    Hypergraph h = complete_triples(15);
    h.hyperedges.resize(443);
    CHECK(edge_count_check(h, BigRat(1, 4)).verdict == Verdict::Pass);
    h.hyperedges.resize(442);
    CHECK(edge_count_check(h, BigRat(1, 4)).verdict == Verdict::Fail);
}

TEST_CASE("sparseness_check: frozen verdicts on small structures") {
    SparseGraph k6 = complete_graph(6);
    SparsityReport r = sparseness_check(k6, 6);
    CHECK(r.verdict == SparsityVerdict::Violated);
    REQUIRE(r.violator.has_value());
    CHECK(*r.violator == std::vector<std::int64_t>{0, 1, 2, 3, 4, 5});
    CHECK(r.violator_edges == 15);
    CHECK(r.method == "exact");

    CHECK(sparseness_check(k6, 5).verdict == SparsityVerdict::CertifiedSparse);

    SparseGraph triangle = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(sparseness_check(triangle, 3).verdict == SparsityVerdict::CertifiedSparse);

    SparseGraph edgeless = make_graph(9, {});
    CHECK(sparseness_check(edgeless, 6).verdict == SparsityVerdict::CertifiedSparse);

    // K6 sitting inside a larger window, plus a pendant path the 3-core drops.
    SparseGraph planted = complete_graph(6, 3, 20);
    planted.edges.emplace_back(0, 1);
    planted.edges.emplace_back(1, 2);
    planted.edges.emplace_back(2, 3);
    planted.normalize();
    SparsityReport rp = sparseness_check(planted, 6);
    CHECK(rp.verdict == SparsityVerdict::Violated);
    REQUIRE(rp.violator.has_value());
    CHECK(*rp.violator == std::vector<std::int64_t>{3, 4, 5, 6, 7, 8});
    CHECK(rp.violator_edges == 15);

    // One edge short of K6 still violates (14 > 12); three short does not.
    SparseGraph nearly = complete_graph(6);
    nearly.edges.erase(nearly.edges.begin());
    SparsityReport rn = sparseness_check(nearly, 6);
    CHECK(rn.verdict == SparsityVerdict::Violated);
    CHECK(rn.violator_edges == 14);
    SparseGraph weaker = complete_graph(6);
    weaker.edges.erase(weaker.edges.begin(), weaker.edges.begin() + 3);
    CHECK(sparseness_check(weaker, 6).verdict == SparsityVerdict::CertifiedSparse);

    // K7 at k_max = 6: the violator minimizes down to six vertices.
    SparsityReport r7 = sparseness_check(complete_graph(7), 6);
    CHECK(r7.verdict == SparsityVerdict::Violated);
    REQUIRE(r7.violator.has_value());
    CHECK(r7.violator->size() == 6);
    CHECK(r7.violator_edges == 15);

    // Complete 3-uniform structures: C(6,3) = 20 > 12, C(5,3) = 10 <= 10.
    CHECK(sparseness_check(complete_triples(6), 6).verdict == SparsityVerdict::Violated);
    CHECK(sparseness_check(complete_triples(5), 6).verdict == SparsityVerdict::CertifiedSparse);
}

TEST_CASE("sparseness_check: budget exhaustion degrades to not-falsified") {
    SparsityReport r = sparseness_check(complete_graph(6), 6, SparsenessMode::Exact, 3);
    CHECK(r.verdict == SparsityVerdict::NotFalsified);
    CHECK(r.budget_exhausted);
}

TEST_CASE("sparseness_check agrees with exhaustive subset sweep on graphs") {
    std::mt19937_64 rng(20240817);
    for (int iter = 0; iter < 400; ++iter) {
        std::int64_t n = 4 + iter % 9;
        std::uint64_t q = 100 + 100 * (iter % 8); // permille .1 .. .8
        SparseGraph g;
        g.vertices = {0, n};
        g.epsilon = BigRat(1, 4);
        for (std::int64_t u = 0; u < n; ++u)
            for (std::int64_t v = u + 1; v < n; ++v)
                if (rng() % 1000 < q) g.edges.emplace_back(u, v);
        g.normalize();

        auto lists = as_lists(g);
        int vmin = min_violating_size(n, lists);
        for (std::uint64_t k = 1; k <= 6; ++k) {
            SparsityReport rep = sparseness_check(g, k);
            bool oracle_violated = vmin <= (int)k;
            REQUIRE(rep.verdict ==
                    (oracle_violated ? SparsityVerdict::Violated : SparsityVerdict::CertifiedSparse));
            if (oracle_violated) {
                REQUIRE(rep.violator.has_value());
                CHECK(rep.violator->size() <= k);
                CHECK(count_inside(lists, *rep.violator) == rep.violator_edges);
                CHECK(rep.violator_edges > 2 * rep.violator->size());
            }
        }
    }
}

TEST_CASE("sparseness_check agrees with exhaustive subset sweep on hypergraphs") {
    std::mt19937_64 rng(77002);
    for (int iter = 0; iter < 200; ++iter) {
        std::int64_t n = 5 + iter % 6;
        std::uint64_t q = 100 + 60 * (iter % 12); // permille
        Hypergraph h;
        h.vertices = {0, n};
        h.d = 2;
        h.epsilon = BigRat(1, 4);
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = a + 1; b < n; ++b)
                for (std::int64_t c = b + 1; c < n; ++c)
                    if (rng() % 1000 < q) h.hyperedges.push_back({a, b, c});
        h.normalize();

        int vmin = min_violating_size(n, h.hyperedges);
        for (std::uint64_t k = 1; k <= 6; ++k) {
            SparsityReport rep = sparseness_check(h, k);
            bool oracle_violated = vmin <= (int)k;
            REQUIRE(rep.verdict ==
                    (oracle_violated ? SparsityVerdict::Violated : SparsityVerdict::CertifiedSparse));
            if (oracle_violated) {
                REQUIRE(rep.violator.has_value());
                CHECK(rep.violator->size() <= k);
                CHECK(count_inside(h.hyperedges, *rep.violator) == rep.violator_edges);
                CHECK(rep.violator_edges > 2 * rep.violator->size());
            }
        }
    }
}

TEST_CASE("falsifier finds planted dense spots and never cries wolf") {
    SparseGraph planted = complete_graph(6, 10, 40);
    for (std::int64_t v = 0; v + 1 < 10; ++v) planted.edges.emplace_back(v, v + 1);
    planted.normalize();
    SparsityReport hit = sparseness_check(planted, 6, SparsenessMode::Falsify, 300000);
    CHECK(hit.verdict == SparsityVerdict::Violated);
    CHECK(hit.method == "falsifier");
    REQUIRE(hit.violator.has_value());
    CHECK(*hit.violator == std::vector<std::int64_t>{10, 11, 12, 13, 14, 15});

    std::mt19937_64 rng(5150);
    for (int iter = 0; iter < 60; ++iter) {
        std::int64_t n = 6 + iter % 7;
        SparseGraph g;
        g.vertices = {0, n};
        g.epsilon = BigRat(1, 4);
        for (std::int64_t u = 0; u < n; ++u)
            for (std::int64_t v = u + 1; v < n; ++v)
                if (rng() % 1000 < 350) g.edges.emplace_back(u, v);
        g.normalize();
        int vmin = min_violating_size(n, as_lists(g));
        SparsityReport rep = sparseness_check(g, 6, SparsenessMode::Falsify, 100000);
        if (rep.verdict == SparsityVerdict::Violated) CHECK(vmin <= 6);
    }
}

TEST_CASE("certified sparsity is monotone in k_max") {
    auto [g, cert] = las_vegas_sparse_graph(200, BigRat(1, 10), 6, 50, 1234);
    CHECK(cert.ok());
    CHECK(edge_count_check(g, BigRat(1, 10)).verdict == Verdict::Pass);
    for (std::uint64_t k = 1; k <= 6; ++k)
        CHECK(sparseness_check(g, k).verdict == SparsityVerdict::CertifiedSparse);
}

TEST_CASE("las_vegas_sparse_graph guards its precondition") {
    // M = 1, N = 16: 16^(-1/2) = 1/4 >= 1/10, so M is not small enough.
    CHECK_THROWS_AS(las_vegas_sparse_graph(16, BigRat(1, 4), 1, 5, 0), PreconditionViolated);
    // N = 256 passes the guard and any draw certifies at k_max = 1.
    auto [g, cert] = las_vegas_sparse_graph(256, BigRat(1, 4), 1, 10, 7);
    CHECK(cert.ok());
    CHECK(cert.details.at("attempts").get<std::uint64_t>() == 1);
    CHECK(g.edges.size() > 1024); // |E|^4 > 256^5 held, i.e. |E| > 1024
}

TEST_CASE("graph and hypergraph JSON round-trips") {
    SparseGraph g = random_graph(20, BigRat(1, 4), 5);
    SparseGraph g2 = SparseGraph::from_json(g.to_json());
    CHECK(g2.vertices == g.vertices);
    CHECK(g2.edges == g.edges);
    CHECK(g2.epsilon == g.epsilon);
    CHECK(g2.seed == g.seed);

    Hypergraph h = random_hypergraph({0, 20}, 2, BigRat(1, 10), 5);
    Hypergraph h2 = Hypergraph::from_json(h.to_json());
    CHECK(h2.vertices == h.vertices);
    CHECK(h2.d == h.d);
    CHECK(h2.hyperedges == h.hyperedges);
    CHECK(h2.epsilon == h.epsilon);

    CHECK_THROWS_AS(make_graph(5, {{2, 2}}), PreconditionViolated);
    CHECK_THROWS_AS(make_graph(5, {{1, 7}}), PreconditionViolated);
}

TEST_CASE("DOT export emits plain graph syntax") {
    SparseGraph g = make_graph(4, {{0, 1}, {2, 3}});
    std::string dot = export_dot(g);
    CHECK(dot.find("graph sparse {") == 0);
    CHECK(dot.find("0 -- 1;") != std::string::npos);
    CHECK(dot.find("2 -- 3;") != std::string::npos);

    Hypergraph h = complete_triples(3);
    std::string hdot = export_dot(h);
    CHECK(hdot.find("e0 [shape=point];") != std::string::npos);
    CHECK(hdot.find("e0 -- 2;") != std::string::npos);
}

TEST_CASE("brute-force oracle helper sanity") {
    // The shared test oracle itself, pinned on K6: any 6-set has 15 > 12.
    std::vector<std::int64_t> universe{0, 1, 2, 3, 4, 5};
    std::vector<std::vector<std::int64_t>> edges;
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) edges.push_back({u, v});
    auto hit = testsupport::brute_force_violator(universe, edges, 6);
    REQUIRE(hit.has_value());
    CHECK(hit->vertices.size() == 6);
    CHECK(hit->edges == 15);
    CHECK_FALSE(testsupport::brute_force_violator(universe, edges, 5).has_value());
}
