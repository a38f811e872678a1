#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "clonecert/algebra.hpp"
#include "clonecert/cert.hpp"
#include "clonecert/sparse.hpp"

namespace clonecert::modest {

using algebra::FiniteOperation;
using algebra::Tuple;

// Certified (k,l)-modesty facts about one operation, optionally strengthened
// to the linear form "(N, alpha*N)-modest for every N".
struct ModestyProfile {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::optional<std::uint64_t> alpha;

    // True when the profile implies (k,l)-modesty: a pair (k0,l0) with
    // k0 >= k and l0 <= l, or alpha*k <= l.
    bool covers(std::uint64_t k, std::uint64_t l) const;

    Json to_json() const;
    static ModestyProfile from_json(const Json& j);
};

// Symmetric binary operation taking value offset+1, ..., offset+|E| on the
// graph's edges in lexicographic order (both orientations) and 0 elsewhere.
FiniteOperation graph_to_modest(const sparse::SparseGraph& g, std::int64_t value_offset = 0);

// The set of tuples where the operation is nonzero.
std::set<Tuple> support(const FiniteOperation& op);

struct MaxValuesResult {
    std::uint64_t max_count = 0;                  // largest value-set size found
    std::vector<std::vector<std::int64_t>> witness; // concrete box achieving it
    bool complete = false;                        // enumeration ran to the end
    std::uint64_t work = 0;
};

// Largest number of distinct values over any product of boxes with at most k
// entries per coordinate.  Enumeration runs over support-relevant values per
// coordinate plus an off-support representative (all other columns are
// identically 0, so this loses nothing).  Stops early once a box beats
// `stop_above`, and gives up (complete = false) when `budget` work units are
// spent.
MaxValuesResult modesty_max_values(const FiniteOperation& op, std::uint64_t k,
                                   std::uint64_t budget = 10'000'000,
                                   std::optional<std::uint64_t> stop_above = std::nullopt);

enum class ModestyMode { Exact, Falsify };

// Certifies or refutes (k,l)-modesty.  Exact mode first applies the product
// bound (a k-box holds at most k^arity tuples, hence values); otherwise it
// enumerates via modesty_max_values, degrading to not-falsified when the
// budget runs out.  Falsify mode grows boxes greedily with random restarts.
// Any violation is re-verified by direct range counting before emission.
Certificate modesty_check(const FiniteOperation& op, std::uint64_t k, std::uint64_t l,
                          ModestyMode mode = ModestyMode::Exact,
                          std::uint64_t budget = 10'000'000);

// Composition step: inner operations all (k,k')-modest, outer (k',k'')-modest,
// so the composite is (k,k'')-modest.  Throws ProfileMismatch unless the
// inner pairs agree and meet the outer's first component.
std::pair<std::uint64_t, std::uint64_t> compose_profiles(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& inner,
    std::pair<std::uint64_t, std::uint64_t> outer);

} // namespace clonecert::modest
