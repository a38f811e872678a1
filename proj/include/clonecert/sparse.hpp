#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clonecert/algebra.hpp"
#include "clonecert/cert.hpp"
#include "clonecert/rational.hpp"

namespace clonecert::sparse {

using algebra::UniverseWindow;

// Simple undirected graph on an integer window.  Edges are stored as sorted
// pairs (u < v), the edge list itself kept sorted and duplicate-free.
struct SparseGraph {
    UniverseWindow vertices;
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    BigRat epsilon;
    std::uint64_t seed = 0;

    std::size_t edge_count() const { return edges.size(); }
    bool has_edge(std::int64_t u, std::int64_t v) const;
    void normalize(); // sort, dedupe, validate window membership

    Json to_json() const;
    static SparseGraph from_json(const Json& j);
};

// (d+1)-uniform hypergraph on an integer window; hyperedges are sorted
// (d+1)-element vertex lists, the list of them sorted and duplicate-free.
struct Hypergraph {
    UniverseWindow vertices;
    int d = 1;
    std::vector<std::vector<std::int64_t>> hyperedges;
    BigRat epsilon;
    std::uint64_t seed = 0;

    std::size_t edge_count() const { return hyperedges.size(); }
    void normalize();

    Json to_json() const;
    static Hypergraph from_json(const Json& j);
};

enum class SparsityVerdict { CertifiedSparse, Violated, NotFalsified };

std::string sparsity_verdict_name(SparsityVerdict v);

struct SparsityReport {
    std::uint64_t k_max = 0;
    SparsityVerdict verdict = SparsityVerdict::NotFalsified;
    std::optional<std::vector<std::int64_t>> violator;
    std::uint64_t violator_edges = 0;
    std::string method; // "exact" or "falsifier"
    bool budget_exhausted = false;
    std::uint64_t nodes_visited = 0;

    bool ok() const { return verdict != SparsityVerdict::Violated; }
    Json to_json() const;
};

// Exact test of M * N^(2 eps - 1) < 1/10.  With eps = p/q in lowest terms the
// comparison clears denominators to 10^q * M^q < N^(q - 2p); no floating
// point is involved.  Requires 0 < eps < 1/2, M >= 1, N >= 2.
bool ll_eps(const BigInt& M, const BigInt& N, const BigRat& eps);

// Bernoulli(p) graph with p = 4 * N^(eps - 1), each of the N(N-1)/2 potential
// edges drawn independently.  The draw threshold is double precision; the
// exact rational value of that double is recorded by p_used().  Throws
// ProbabilityOverflow when p > 1 (decided exactly: 4^q > N^(q-p)).
SparseGraph random_graph(std::int64_t N, const BigRat& eps, std::uint64_t seed);

// Bernoulli(p) (d+1)-uniform hypergraph with p = 2 * (d+1)! * N^(eps - 1)
// where N is the window size.  Small candidate spaces are swept directly;
// large ones draw the binomial edge count first and then sample distinct
// hyperedges, so the C(N, d+1) candidates are never enumerated.
Hypergraph random_hypergraph(UniverseWindow window, int d, const BigRat& eps,
                             std::uint64_t seed);

// The double-precision sampling probability for the two generators, as an
// exact rational (every double is one).
BigRat graph_p_used(std::int64_t N, const BigRat& eps);
BigRat hyper_p_used(std::int64_t N, int d, const BigRat& eps);

// Exact check |E| > B^(1+eps) for graphs resp. |E| > B^(d+eps) for
// hypergraphs, via integer powers: |E|^q > B^(q+p) resp. |E|^q > B^(dq+p).
// B defaults to the window size; ladder levels override it with the window's
// upper endpoint.
Certificate edge_count_check(const SparseGraph& g, const BigRat& eps,
                             std::optional<BigInt> base_override = std::nullopt);
Certificate edge_count_check(const Hypergraph& h, const BigRat& eps,
                             std::optional<BigInt> base_override = std::nullopt);

enum class SparsenessMode { Exact, Falsify };

// Decides whether some vertex set S with |S| <= k_max spans more than 2|S|
// internal (hyper)edges.  Exact mode reduces to the 3-core and enumerates
// connected subsets with a missing-edge prune (sound: any inclusion-minimal
// violator is connected with internal degree >= 3); falsify mode runs greedy
// peeling plus randomized local search and reports not-falsified on failure.
// `budget` caps search nodes; exhausting it degrades the exact verdict to
// not-falsified with budget_exhausted set.
SparsityReport sparseness_check(const SparseGraph& g, std::uint64_t k_max,
                                SparsenessMode mode = SparsenessMode::Exact,
                                std::uint64_t budget = 50'000'000);
SparsityReport sparseness_check(const Hypergraph& h, std::uint64_t k_max,
                                SparsenessMode mode = SparsenessMode::Exact,
                                std::uint64_t budget = 50'000'000);

// Resample random_graph until a draw passes both the edge-count bound and the
// exact sparseness check for k_max = M.  Requires ll_eps(M, N, eps); throws
// RetriesExhausted with attempt statistics if no draw passes.
std::pair<SparseGraph, Certificate> las_vegas_sparse_graph(std::int64_t N,
                                                           const BigRat& eps,
                                                           std::uint64_t M,
                                                           std::uint64_t max_retries,
                                                           std::uint64_t seed);

std::string export_dot(const SparseGraph& g);
std::string export_dot(const Hypergraph& h);

} // namespace clonecert::sparse
