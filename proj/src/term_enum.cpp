#include "clonecert/algebra.hpp"

#include <algorithm>
#include <functional>

namespace clonecert::algebra {

namespace {

// Weight of a term: variables x_i weigh 1+i, a symbol node f^a_j weighs
// 1+a+j plus its children.  Finitely many terms share each weight, every
// weight >= 1 is hit by a variable, and a term with c symbol occurrences
// (or a symbol of arity a) has weight at least 2c+1 (resp. 2a+1).  Sorting
// by weight therefore keeps the occurrence and arity counts of the i-th
// term at most i.
struct WeightClassCache {
    std::vector<std::vector<Term>> by_weight; // index 0 unused

    const std::vector<Term>& terms_of_weight(int w);
};

std::vector<std::int64_t> preorder_key(const Term& t) {
    std::vector<std::int64_t> key;
    std::function<void(const Term&)> walk = [&](const Term& node) {
        if (node.kind == Term::Kind::Var) {
            key.push_back(0);
            key.push_back(node.var_index);
        } else {
            key.push_back(1);
            key.push_back(node.op_arity);
            key.push_back(node.op_index);
            for (const auto& c : node.children) walk(c);
        }
    };
    walk(t);
    return key;
}

void compositions(int total, int parts, std::vector<int>& scratch,
                  const std::function<void(const std::vector<int>&)>& visit) {
    if (parts == 1) {
        if (total >= 1) {
            scratch.push_back(total);
            visit(scratch);
            scratch.pop_back();
        }
        return;
    }
    for (int first = 1; first + (parts - 1) <= total; ++first) {
        scratch.push_back(first);
        compositions(total - first, parts - 1, scratch, visit);
        scratch.pop_back();
    }
}

const std::vector<Term>& WeightClassCache::terms_of_weight(int w) {
    while (static_cast<int>(by_weight.size()) <= w) {
        int target = static_cast<int>(by_weight.size());
        std::vector<Term> result;
        if (target >= 1) {
            result.push_back(Term::var(target - 1));
            // Symbol roots: 1 + a + j + (sum of child weights) = target.
            for (int a = 1; 1 + 2 * a <= target; ++a) {
                for (int s = a; 1 + a + s <= target; ++s) {
                    int j = target - 1 - a - s;
                    std::vector<int> split;
                    compositions(s, a, split, [&](const std::vector<int>& parts) {
                        // Cartesian product over child weight classes.
                        std::vector<int> idx(parts.size(), 0);
                        while (true) {
                            std::vector<Term> subs;
                            bool ok = true;
                            for (std::size_t c = 0; c < parts.size(); ++c) {
                                const auto& pool = by_weight[parts[c]];
                                if (pool.empty()) { ok = false; break; }
                                subs.push_back(pool[idx[c]]);
                            }
                            if (!ok) break;
                            result.push_back(Term::op(a, j, std::move(subs)));
                            int pos = static_cast<int>(parts.size()) - 1;
                            while (pos >= 0) {
                                if (++idx[pos] <
                                    static_cast<int>(by_weight[parts[pos]].size()))
                                    break;
                                idx[pos] = 0;
                                --pos;
                            }
                            if (pos < 0) break;
                        }
                    });
                }
            }
            std::sort(result.begin(), result.end(), [](const Term& x, const Term& y) {
                return preorder_key(x) < preorder_key(y);
            });
        }
        by_weight.push_back(std::move(result));
    }
    return by_weight[w];
}

} // namespace

std::vector<Term> enumerate_terms(int m) {
    if (m < 0) throw UsageError("cannot enumerate a negative number of terms");
    WeightClassCache cache;
    cache.terms_of_weight(0);
    std::vector<Term> out;
    for (int w = 1; static_cast<int>(out.size()) < m; ++w) {
        for (const auto& t : cache.terms_of_weight(w)) {
            out.push_back(t);
            if (static_cast<int>(out.size()) == m) break;
        }
        if (w > 4 * m + 8) throw UsageError("term enumeration failed to progress");
    }
    return out;
}

} // namespace clonecert::algebra
