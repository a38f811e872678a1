#include "clonecert/algebra.hpp"

#include <functional>
#include <map>

namespace clonecert::algebra {

namespace {

std::size_t checked_point_count(UniverseWindow universe, int arity, std::size_t cap) {
    BigInt points = ipow(BigInt(universe.size()), static_cast<std::uint64_t>(arity));
    if (points > BigInt(static_cast<std::uint64_t>(cap)))
        throw CapExceeded("universe^arity exceeds the closure table cap");
    return points.convert_to<std::size_t>();
}

} // namespace

OpTable table_of(const FiniteOperation& op, UniverseWindow universe) {
    std::size_t n = checked_point_count(universe, op.arity(), std::size_t(1) << 28);
    OpTable table;
    table.arity = op.arity();
    table.values.resize(n);
    Tuple point(op.arity(), universe.lo);
    for (std::size_t idx = 0; idx < n; ++idx) {
        table.values[idx] = op.value_at(point);
        for (int pos = op.arity() - 1; pos >= 0; --pos) {
            if (++point[pos] < universe.hi) break;
            point[pos] = universe.lo;
        }
    }
    return table;
}

std::optional<int> ClosureResult::find(const OpTable& table) const {
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (tables[i] == table) return static_cast<int>(i);
    }
    return std::nullopt;
}

ClosureResult bounded_clone_closure(const std::vector<FiniteOperation>& generators,
                                    UniverseWindow universe, int depth_limit,
                                    const std::vector<FiniteOperation>& unary_pool,
                                    int term_arity, std::size_t cap) {
    if (term_arity < 1) throw ArityMismatch("closure needs at least one variable");
    if (universe.size() <= 0) throw UsageError("closure universe is empty");
    for (const auto& u : unary_pool) {
        if (u.arity() != 1) throw ArityMismatch("unary pool contains a non-unary operation");
    }
    const std::size_t n_points = checked_point_count(universe, term_arity, cap);

    ClosureResult res;
    res.term_arity = term_arity;
    std::map<OpTable, int> seen;

    auto add = [&](OpTable table, Derivation deriv, int d) -> bool {
        auto it = seen.find(table);
        if (it != seen.end()) return false;
        if (res.tables.size() >= cap)
            throw CapExceeded("closure grew past the configured table cap");
        int index = static_cast<int>(res.tables.size());
        seen.emplace(table, index);
        FiniteOperation op(term_arity, universe);
        Tuple point(term_arity, universe.lo);
        for (std::size_t idx = 0; idx < n_points; ++idx) {
            if (table.values[idx] != 0) op.set_value(point, table.values[idx]);
            for (int pos = term_arity - 1; pos >= 0; --pos) {
                if (++point[pos] < universe.hi) break;
                point[pos] = universe.lo;
            }
        }
        res.tables.push_back(std::move(table));
        res.ops.push_back(std::move(op));
        res.derivations.push_back(std::move(deriv));
        res.depths.push_back(d);
        return true;
    };

    for (int coord = 0; coord < term_arity; ++coord) {
        OpTable table;
        table.arity = term_arity;
        table.values.resize(n_points);
        Tuple point(term_arity, universe.lo);
        for (std::size_t idx = 0; idx < n_points; ++idx) {
            table.values[idx] = point[coord];
            for (int pos = term_arity - 1; pos >= 0; --pos) {
                if (++point[pos] < universe.hi) break;
                point[pos] = universe.lo;
            }
        }
        add(std::move(table), Derivation{Derivation::Kind::Projection, coord, {}}, 0);
    }

    for (int round = 1; round <= depth_limit; ++round) {
        const std::size_t frontier_end = res.tables.size();
        bool grew = false;

        for (std::size_t gi = 0; gi < generators.size(); ++gi) {
            const auto& g = generators[gi];
            const int ga = g.arity();
            std::vector<int> pick(ga, 0);
            while (true) {
                OpTable table;
                table.arity = term_arity;
                table.values.resize(n_points);
                Tuple args(ga);
                bool in_domain;
                for (std::size_t idx = 0; idx < n_points; ++idx) {
                    in_domain = true;
                    for (int c = 0; c < ga; ++c) {
                        std::int64_t v = res.tables[pick[c]].values[idx];
                        if (!g.domain().contains(v)) { in_domain = false; break; }
                        args[c] = v;
                    }
                    table.values[idx] = in_domain ? g.value_at(args) : 0;
                }
                grew |= add(std::move(table),
                            Derivation{Derivation::Kind::Generator,
                                       static_cast<int>(gi), pick},
                            round);
                int pos = ga - 1;
                while (pos >= 0) {
                    if (static_cast<std::size_t>(++pick[pos]) < frontier_end) break;
                    pick[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }

        for (std::size_t ui = 0; ui < unary_pool.size(); ++ui) {
            const auto& u = unary_pool[ui];
            for (std::size_t src = 0; src < frontier_end; ++src) {
                OpTable table;
                table.arity = term_arity;
                table.values.resize(n_points);
                for (std::size_t idx = 0; idx < n_points; ++idx) {
                    std::int64_t v = res.tables[src].values[idx];
                    table.values[idx] =
                        u.domain().contains(v) ? u.value_at({v}) : 0;
                }
                grew |= add(std::move(table),
                            Derivation{Derivation::Kind::UnaryPool,
                                       static_cast<int>(ui),
                                       {static_cast<int>(src)}},
                            round);
            }
        }

        res.depth_reached = round;
        if (!grew) break;
    }
    return res;
}

std::pair<Term, Binding> closure_term(const ClosureResult& closure, int index,
                                      const std::vector<FiniteOperation>& generators,
                                      const std::vector<FiniteOperation>& unary_pool) {
    if (index < 0 || index >= static_cast<int>(closure.ops.size()))
        throw UsageError("closure element index out of range");
    Binding binding;
    std::function<Term(int)> build = [&](int i) -> Term {
        const Derivation& d = closure.derivations[i];
        switch (d.kind) {
            case Derivation::Kind::Projection:
                return Term::var(d.which);
            case Derivation::Kind::Generator: {
                const auto& g = generators.at(d.which);
                binding.ops[{g.arity(), d.which}] = g;
                std::vector<Term> subs;
                for (int c : d.children) subs.push_back(build(c));
                return Term::op(g.arity(), d.which, std::move(subs));
            }
            case Derivation::Kind::UnaryPool: {
                std::string name = "u" + std::to_string(d.which);
                binding.unaries[name] = unary_pool.at(d.which);
                return Term::unary(name, build(d.children[0]));
            }
        }
        throw UsageError("corrupt closure derivation");
    };
    Term t = build(index);
    return {std::move(t), std::move(binding)};
}

} // namespace clonecert::algebra
