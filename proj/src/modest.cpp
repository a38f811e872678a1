#include "clonecert/modest.hpp"

#include <algorithm>
#include <functional>

#include "clonecert/seeding.hpp"

namespace clonecert::modest {

using algebra::UniverseWindow;

namespace {

// Per-coordinate values that occur in support tuples, plus (when the window
// is larger) the smallest value outside them.  Boxes never need any other
// vertices: a tuple with an off-support coordinate value is itself off
// support and contributes only 0.
struct Relevance {
    std::vector<std::vector<std::int64_t>> rel;
    std::vector<std::optional<std::int64_t>> zrep;
};

std::optional<std::int64_t> smallest_outside(const std::vector<std::int64_t>& sorted_vals,
                                             const UniverseWindow& w) {
    std::int64_t probe = w.lo;
    for (auto x : sorted_vals) {
        if (x > probe) break;
        if (x == probe) ++probe;
    }
    if (probe < w.hi) return probe;
    return std::nullopt;
}

Relevance build_relevance(const FiniteOperation& op) {
    const int rho = op.arity();
    Relevance r;
    r.rel.assign(rho, {});
    r.zrep.assign(rho, std::nullopt);
    for (const auto& [t, v] : op.support())
        for (int i = 0; i < rho; ++i) r.rel[i].push_back(t[i]);
    for (int i = 0; i < rho; ++i) {
        auto& R = r.rel[i];
        std::sort(R.begin(), R.end());
        R.erase(std::unique(R.begin(), R.end()), R.end());
        r.zrep[i] = smallest_outside(R, op.domain());
    }
    return r;
}

struct BoxEval {
    std::uint64_t count = 0;    // distinct values, 0 included when reachable
    bool zero_via_slot = false; // 0 needs an off-support column appended
    int slot_coord = -1;
};

// Value count of the box given by `chosen` (subsets of relevant values),
// allowing one off-support column wherever a slot is free.  Used by the
// falsifier; emitted witnesses are re-verified independently.
BoxEval eval_box(const FiniteOperation& op, const Relevance& rv,
                 const std::vector<std::vector<std::int64_t>>& chosen, std::uint64_t k,
                 std::uint64_t& work) {
    const int rho = op.arity();
    work += op.support().size() + 1;
    std::uint64_t prod = 1;
    for (const auto& s : chosen) prod *= s.size();
    std::set<std::int64_t> vals;
    std::uint64_t inside = 0;
    for (const auto& [t, v] : op.support()) {
        bool in = true;
        for (int i = 0; i < rho && in; ++i)
            in = std::binary_search(chosen[i].begin(), chosen[i].end(), t[i]);
        if (in) {
            vals.insert(v);
            ++inside;
        }
    }
    BoxEval out;
    bool zero_via_gap = inside < prod;
    if (!zero_via_gap) {
        for (int i = 0; i < rho; ++i)
            if (chosen[i].size() < k && rv.zrep[i]) {
                out.zero_via_slot = true;
                out.slot_coord = i;
                break;
            }
    }
    out.count = vals.size() + (zero_via_gap || out.zero_via_slot ? 1 : 0);
    return out;
}

Json boxes_to_json(const std::vector<std::vector<std::int64_t>>& boxes) {
    Json arr = Json::array();
    for (const auto& b : boxes) arr.push_back(Json(b));
    return arr;
}

// Depth-first enumeration of boxes over support-relevant values.  At each
// coordinate the candidate values come from the support tuples compatible
// with the box prefix, and the compatible tuples are threaded down so the
// leaf only inspects tuples already inside the box.
struct MaxSearch {
    const FiniteOperation& op;
    std::uint64_t k;
    std::uint64_t budget;
    std::optional<std::uint64_t> stop_above;

    int rho;
    std::vector<Tuple> tuples;
    std::vector<std::int64_t> values;

    std::vector<std::vector<std::int64_t>> chosen;
    std::vector<std::optional<std::int64_t>> zfree; // off-support value per prefix
    MaxValuesResult res;
    bool aborted = false;
    bool stopped = false;

    explicit MaxSearch(const FiniteOperation& o, std::uint64_t k_, std::uint64_t b,
                       std::optional<std::uint64_t> sa)
        : op(o), k(k_), budget(b), stop_above(sa), rho(o.arity()) {
        tuples.reserve(op.support().size());
        for (const auto& [t, v] : op.support()) {
            tuples.push_back(t);
            values.push_back(v);
        }
        chosen.assign(rho, {});
        zfree.assign(rho, std::nullopt);
    }

    bool spend(std::uint64_t units) {
        res.work += units;
        if (res.work > budget) aborted = true;
        return aborted;
    }

    void leaf(const std::vector<std::uint32_t>& inside, std::uint64_t prod) {
        if (spend(inside.size() + 1)) return;
        std::set<std::int64_t> vals;
        for (auto ix : inside) vals.insert(values[ix]);
        bool gap = inside.size() < prod;
        int slot = -1;
        if (!gap)
            for (int i = 0; i < rho; ++i)
                if (chosen[i].size() < k && zfree[i]) {
                    slot = i;
                    break;
                }
        std::uint64_t count = vals.size() + (gap || slot >= 0 ? 1 : 0);
        if (count > res.max_count) {
            res.max_count = count;
            res.witness = chosen;
            if (slot >= 0) res.witness[slot].push_back(*zfree[slot]);
            if (stop_above && count > *stop_above) stopped = true;
        }
    }

    // `compat`: indices of support tuples matching chosen[0..i-1].
    void descend(int i, const std::vector<std::uint32_t>& compat, std::uint64_t prod) {
        if (stopped || aborted) return;
        if (i == rho) {
            leaf(compat, prod);
            return;
        }
        if (spend(compat.size() + 1)) return;
        std::vector<std::int64_t> R;
        R.reserve(compat.size());
        for (auto ix : compat) R.push_back(tuples[ix][i]);
        std::sort(R.begin(), R.end());
        R.erase(std::unique(R.begin(), R.end()), R.end());
        if (R.empty()) return; // every completion shows only the value 0
        zfree[i] = smallest_outside(R, op.domain());
        std::vector<std::vector<std::uint32_t>> bucket(R.size());
        for (auto ix : compat) {
            auto it = std::lower_bound(R.begin(), R.end(), tuples[ix][i]);
            bucket[(std::size_t)(it - R.begin())].push_back(ix);
        }
        std::size_t maxsz = std::min<std::size_t>(k, R.size());
        std::vector<std::uint32_t> current;
        std::function<void(std::size_t)> grow = [&](std::size_t start) {
            for (std::size_t j = start; j < R.size() && !stopped && !aborted; ++j) {
                chosen[i].push_back(R[j]);
                std::size_t keep = current.size();
                current.insert(current.end(), bucket[j].begin(), bucket[j].end());
                std::uint64_t p2 = prod > (std::uint64_t)1 << 60 ? prod : prod * chosen[i].size();
                descend(i + 1, current, p2);
                if (chosen[i].size() < maxsz) grow(j + 1);
                current.resize(keep);
                chosen[i].pop_back();
            }
        };
        grow(0);
        zfree[i] = std::nullopt;
    }

    void run() {
        if (op.domain().size() <= 0) {
            res.complete = true; // no boxes exist at all
            return;
        }
        // Any single-point box shows exactly one value, so the max is >= 1;
        // branches whose boxes miss the support entirely are covered by this
        // seed and need no enumeration.
        res.max_count = 1;
        res.witness.assign(rho, {op.domain().lo});
        if (stop_above && *stop_above < 1) stopped = true;
        if (!stopped && !tuples.empty()) {
            std::vector<std::uint32_t> all(tuples.size());
            for (std::uint32_t ix = 0; ix < all.size(); ++ix) all[ix] = ix;
            descend(0, all, 1);
        }
        res.complete = !aborted && !stopped;
    }
};

} // namespace

bool ModestyProfile::covers(std::uint64_t k, std::uint64_t l) const {
    for (auto [k0, l0] : pairs)
        if (k0 >= k && l0 <= l) return true;
    if (alpha && BigInt(*alpha) * k <= BigInt(l)) return true;
    return false;
}

Json ModestyProfile::to_json() const {
    Json j;
    Json arr = Json::array();
    for (auto [k, l] : pairs) arr.push_back(Json::array({k, l}));
    j["pairs"] = std::move(arr);
    if (alpha) j["alpha"] = *alpha;
    return j;
}

ModestyProfile ModestyProfile::from_json(const Json& j) {
    ModestyProfile p;
    for (const auto& pr : j.at("pairs"))
        p.pairs.emplace_back(pr.at(0).get<std::uint64_t>(), pr.at(1).get<std::uint64_t>());
    if (j.contains("alpha")) p.alpha = j.at("alpha").get<std::uint64_t>();
    return p;
}

FiniteOperation graph_to_modest(const sparse::SparseGraph& g, std::int64_t value_offset) {
    if (g.vertices.size() <= 0)
        throw PreconditionViolated("graph_to_modest needs a nonempty vertex window");
    FiniteOperation f(2, g.vertices);
    std::int64_t val = value_offset;
    for (const auto& [u, v] : g.edges) {
        ++val;
        f.set_value({u, v}, val);
        f.set_value({v, u}, val);
    }
    return f;
}

std::set<Tuple> support(const FiniteOperation& op) {
    std::set<Tuple> s;
    for (const auto& [t, v] : op.support()) s.insert(t);
    return s;
}

MaxValuesResult modesty_max_values(const FiniteOperation& op, std::uint64_t k,
                                   std::uint64_t budget,
                                   std::optional<std::uint64_t> stop_above) {
    if (k < 1) throw PreconditionViolated("modesty_max_values needs k >= 1");
    MaxSearch s(op, k, budget, stop_above);
    s.run();
    return s.res;
}

namespace {

Certificate falsify_modesty(const FiniteOperation& op, std::uint64_t k, std::uint64_t l,
                            std::uint64_t budget, Certificate c) {
    const int rho = op.arity();
    Relevance rv = build_relevance(op);
    auto rng = make_rng(derive_seed(0x0b5e55ed, "modesty-falsifier"));
    std::uint64_t work = 0;
    std::uint64_t best_seen = 0;

    auto emit = [&](const std::vector<std::vector<std::int64_t>>& witness) {
        auto vals = algebra::range_on_box(op, witness);
        if (vals.size() <= l) return false;
        for (const auto& b : witness)
            if (b.size() > k) return false;
        c.verdict = Verdict::Violated;
        c.details["witness"] = boxes_to_json(witness);
        c.details["value_count"] = vals.size();
        return true;
    };

    if (op.support().empty() || op.domain().size() <= 0) {
        if (op.domain().size() > 0 && l < 1) {
            std::vector<std::vector<std::int64_t>> w(rho, {op.domain().lo});
            if (emit(w)) return c;
        }
        c.verdict = Verdict::NotFalsified;
        c.details["best_count"] = op.domain().size() > 0 ? (std::uint64_t)1 : (std::uint64_t)0;
        return c;
    }

    while (work < budget) {
        ++work;
        std::vector<std::vector<std::int64_t>> chosen(rho);
        for (int i = 0; i < rho; ++i)
            chosen[i].push_back(rv.rel[i][rng() % rv.rel[i].size()]);
        while (work < budget) {
            BoxEval now = eval_box(op, rv, chosen, k, work);
            best_seen = std::max(best_seen, now.count);
            if (now.count > l) {
                auto w = chosen;
                if (now.zero_via_slot) w[now.slot_coord].push_back(*rv.zrep[now.slot_coord]);
                if (emit(w)) return c;
            }
            // Try every single-value extension; keep the best.  Gains can be
            // negative: filling the last free slot may make 0 unreachable.
            std::int64_t best_gain = 0;
            int best_i = -1;
            std::int64_t best_x = 0;
            for (int i = 0; i < rho; ++i) {
                if (chosen[i].size() >= k) continue;
                for (auto x : rv.rel[i]) {
                    if (std::binary_search(chosen[i].begin(), chosen[i].end(), x)) continue;
                    auto trial = chosen;
                    trial[i].insert(std::lower_bound(trial[i].begin(), trial[i].end(), x), x);
                    BoxEval ev = eval_box(op, rv, trial, k, work);
                    std::int64_t gain = (std::int64_t)ev.count - (std::int64_t)now.count;
                    if (best_i < 0 || gain > best_gain || (gain == best_gain && (rng() & 1))) {
                        best_gain = gain;
                        best_i = i;
                        best_x = x;
                    }
                }
            }
            if (best_i < 0) break; // every coordinate is full
            auto& row = chosen[best_i];
            row.insert(std::lower_bound(row.begin(), row.end(), best_x), best_x);
        }
    }
    c.verdict = Verdict::NotFalsified;
    c.details["best_count"] = best_seen;
    c.details["work"] = work;
    return c;
}

} // namespace

Certificate modesty_check(const FiniteOperation& op, std::uint64_t k, std::uint64_t l,
                          ModestyMode mode, std::uint64_t budget) {
    if (k < 1) throw PreconditionViolated("modesty_check needs k >= 1");
    Certificate c;
    c.kind = "modesty";
    c.inputs["k"] = k;
    c.inputs["l"] = l;
    c.inputs["arity"] = op.arity();
    c.inputs["window"] = Json::array({op.domain().lo, op.domain().hi});
    c.inputs["mode"] = mode == ModestyMode::Exact ? "exact" : "falsify";

    if (mode == ModestyMode::Falsify) return falsify_modesty(op, k, l, budget, std::move(c));

    MaxValuesResult r = modesty_max_values(op, k, budget, l);
    c.details["work"] = r.work;
    if (r.max_count > l) {
        auto vals = algebra::range_on_box(op, r.witness);
        if (vals.size() <= l)
            throw PreconditionViolated("internal error: modesty witness fails recount");
        bool sizes_ok = true;
        for (const auto& b : r.witness) sizes_ok = sizes_ok && b.size() <= k;
        if (!sizes_ok)
            throw PreconditionViolated("internal error: modesty witness exceeds box size");
        c.verdict = Verdict::Violated;
        c.details["witness"] = boxes_to_json(r.witness);
        c.details["value_count"] = vals.size();
    } else if (r.complete) {
        c.verdict = Verdict::Pass;
        c.details["reason"] = "exhaustive";
        c.details["max_values"] = r.max_count;
    } else {
        c.verdict = Verdict::NotFalsified;
        c.details["budget_exhausted"] = true;
    }
    return c;
}

std::pair<std::uint64_t, std::uint64_t> compose_profiles(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& inner,
    std::pair<std::uint64_t, std::uint64_t> outer) {
    if (inner.empty())
        throw ProfileMismatch("compose_profiles needs at least one inner profile");
    for (const auto& p : inner)
        if (p != inner.front())
            throw ProfileMismatch("inner profiles disagree: (" + std::to_string(p.first) + "," +
                                  std::to_string(p.second) + ") vs (" +
                                  std::to_string(inner.front().first) + "," +
                                  std::to_string(inner.front().second) + ")");
    if (outer.first != inner.front().second)
        throw ProfileMismatch("outer profile expects boxes of size " + std::to_string(outer.first) +
                              " but inner operations deliver " +
                              std::to_string(inner.front().second) + " values");
    return {inner.front().first, outer.second};
}

} // namespace clonecert::modest
