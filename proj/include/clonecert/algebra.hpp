#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "clonecert/cert.hpp"
#include "clonecert/errors.hpp"

namespace clonecert::algebra {

// Half-open integer window [lo, hi).
struct UniverseWindow {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    std::int64_t size() const { return hi - lo; }
    bool contains(std::int64_t x) const { return lo <= x && x < hi; }
    bool operator==(const UniverseWindow&) const = default;
};

using Tuple = std::vector<std::int64_t>;

// Finitary operation on a window, stored sparsely: tuples absent from the
// support evaluate to 0.  Support values are strictly positive.
class FiniteOperation {
public:
    FiniteOperation() = default;
    FiniteOperation(int arity, UniverseWindow domain);

    int arity() const { return arity_; }
    const UniverseWindow& domain() const { return domain_; }
    const std::map<Tuple, std::int64_t>& support() const { return support_; }

    // Inserting a value of 0 erases; tuples outside the domain are rejected.
    void set_value(const Tuple& point, std::int64_t value);
    // Total on all tuples: off-support (including out-of-domain) yields 0.
    std::int64_t value_at(const Tuple& point) const;

    std::set<std::int64_t> range_values() const;

    bool operator==(const FiniteOperation& o) const {
        return arity_ == o.arity_ && domain_ == o.domain_ && support_ == o.support_;
    }

    Json to_json() const;
    static FiniteOperation from_json(const Json& j);

private:
    int arity_ = 0;
    UniverseWindow domain_;
    std::map<Tuple, std::int64_t> support_;
};

// Projection x_i of the given arity onto coordinate `index`.
FiniteOperation projection_op(int arity, int index, UniverseWindow window);

// Term over object variables x_i, named unary symbols, and operation symbols
// f^a_j of formal arity a >= 1.
struct Term {
    enum class Kind { Var, Unary, Op };

    Kind kind = Kind::Var;
    int var_index = 0;
    std::string unary_name;
    int op_arity = 0;
    int op_index = 0;
    std::vector<Term> children;

    static Term var(int index);
    static Term unary(std::string name, Term sub);
    static Term op(int arity, int index, std::vector<Term> subs);

    bool operator==(const Term& o) const;

    Json to_json() const;
    static Term from_json(const Json& j);
};

// Nesting depth: variables 0, unary applications add 1, an operation node is
// 1 + max over children.
int depth(const Term& t);

// Number of operation-symbol occurrences (unary symbols not counted).
int op_occurrences(const Term& t);

// 1 + the largest variable index appearing; 0 for variable-free terms
// (which cannot exist here, every leaf is a variable).
int needed_point_width(const Term& t);

struct Binding {
    std::map<std::pair<int, int>, FiniteOperation> ops; // (arity, index) -> op
    std::map<std::string, FiniteOperation> unaries;     // name -> unary op
};

// Evaluate `t` under `binding` at `point` (point[i] is the value of x_i).
// Intermediate values outside an operation's support collapse to 0.
std::int64_t evaluate(const Term& t, const Binding& binding, const Tuple& point);

// First `m` terms of the canonical term enumeration over variables and
// operation symbols.  The enumeration is total and deterministic; the i-th
// term (1-based) has at most i operation-symbol occurrences and every symbol
// in it has formal arity at most i.
std::vector<Term> enumerate_terms(int m);

// Exact value set of an operation over a product of boxes (one box per
// coordinate).  Boxes need not be inside the domain.
std::set<std::int64_t> range_on_box(const FiniteOperation& op,
                                    const std::vector<std::vector<std::int64_t>>& boxes);
std::set<std::int64_t> range_on_box(const Term& t, const Binding& binding,
                                    const std::vector<std::vector<std::int64_t>>& boxes);

// Dense operation table used by the bounded closure: values indexed by
// mixed-radix tuples over the universe window.
struct OpTable {
    int arity = 0;
    std::vector<std::int64_t> values;
    bool operator<(const OpTable& o) const {
        return std::tie(arity, values) < std::tie(o.arity, o.values);
    }
    bool operator==(const OpTable& o) const = default;
};

// How a closure element was first derived: a projection, a generator applied
// to earlier elements, or a unary-pool symbol applied to one element.
struct Derivation {
    enum class Kind { Projection, Generator, UnaryPool };
    Kind kind = Kind::Projection;
    int which = 0;              // projection coordinate / generator index / pool index
    std::vector<int> children;  // indices into the closure element list
};

struct ClosureResult {
    std::vector<FiniteOperation> ops;     // deduplicated, deterministic order
    std::vector<OpTable> tables;          // same order as `ops`
    std::vector<Derivation> derivations;  // same order as `ops`
    std::vector<int> depths;              // term depth of the first derivation
    int term_arity = 0;
    int depth_reached = 0;

    std::optional<int> find(const OpTable& table) const;
};

// All operation tables of `term_arity` variables representable by terms of
// depth <= depth_limit over the generators, the unary pool, and projections.
// Guard: |universe|^term_arity and the table count stay under `cap`.
ClosureResult bounded_clone_closure(const std::vector<FiniteOperation>& generators,
                                    UniverseWindow universe, int depth_limit,
                                    const std::vector<FiniteOperation>& unary_pool,
                                    int term_arity, std::size_t cap = 200000);

// Dense table of `op` over universe^arity (arity taken from the operation).
OpTable table_of(const FiniteOperation& op, UniverseWindow universe);

// Rebuild a concrete term and binding for closure element `index`.  Symbols
// are named f^a_j where j is the generator's position in the generator list,
// and unary-pool entries are bound as "u<pos>".
std::pair<Term, Binding> closure_term(const ClosureResult& closure, int index,
                                      const std::vector<FiniteOperation>& generators,
                                      const std::vector<FiniteOperation>& unary_pool);

} // namespace clonecert::algebra
