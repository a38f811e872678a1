#include "clonecert/algebra.hpp"

#include <algorithm>
#include <functional>

namespace clonecert::algebra {

FiniteOperation::FiniteOperation(int arity, UniverseWindow domain)
    : arity_(arity), domain_(domain) {
    if (arity < 0) throw ArityMismatch("operation arity must be nonnegative");
    if (domain.hi < domain.lo) throw UsageError("window upper bound below lower bound");
}

void FiniteOperation::set_value(const Tuple& point, std::int64_t value) {
    if (static_cast<int>(point.size()) != arity_)
        throw ArityMismatch("tuple length does not match operation arity");
    for (auto x : point) {
        if (!domain_.contains(x))
            throw UsageError("support tuple outside the operation's window");
    }
    if (value < 0) throw UsageError("operation values must be natural numbers");
    if (value == 0)
        support_.erase(point);
    else
        support_[point] = value;
}

std::int64_t FiniteOperation::value_at(const Tuple& point) const {
    if (static_cast<int>(point.size()) != arity_)
        throw ArityMismatch("tuple length does not match operation arity");
    auto it = support_.find(point);
    return it == support_.end() ? 0 : it->second;
}

std::set<std::int64_t> FiniteOperation::range_values() const {
    std::set<std::int64_t> out;
    for (const auto& [tuple, value] : support_) out.insert(value);
    // The zero default is part of the range unless the support is total.
    BigInt points = ipow(BigInt(domain_.size()), static_cast<std::uint64_t>(arity_));
    if (BigInt(static_cast<std::int64_t>(support_.size())) < points) out.insert(0);
    return out;
}

Json FiniteOperation::to_json() const {
    Json j;
    j["arity"] = arity_;
    j["lo"] = domain_.lo;
    j["hi"] = domain_.hi;
    Json supp = Json::array();
    for (const auto& [tuple, value] : support_) {
        Json entry = Json::array();
        for (auto x : tuple) entry.push_back(x);
        entry.push_back(value);
        supp.push_back(entry);
    }
    j["support"] = supp;
    return j;
}

FiniteOperation FiniteOperation::from_json(const Json& j) {
    FiniteOperation op(j.at("arity").get<int>(),
                       UniverseWindow{j.at("lo").get<std::int64_t>(),
                                      j.at("hi").get<std::int64_t>()});
    for (const auto& entry : j.at("support")) {
        if (static_cast<int>(entry.size()) != op.arity() + 1)
            throw UsageError("support entry length does not match arity");
        Tuple t;
        for (int i = 0; i < op.arity(); ++i) t.push_back(entry[i].get<std::int64_t>());
        op.set_value(t, entry[op.arity()].get<std::int64_t>());
    }
    return op;
}

FiniteOperation projection_op(int arity, int index, UniverseWindow window) {
    if (index < 0 || index >= arity)
        throw ArityMismatch("projection coordinate outside arity");
    FiniteOperation op(arity, window);
    Tuple t(arity, window.lo);
    while (true) {
        if (t[index] != 0) op.set_value(t, t[index]);
        int pos = arity - 1;
        while (pos >= 0) {
            if (++t[pos] < window.hi) break;
            t[pos] = window.lo;
            --pos;
        }
        if (pos < 0) break;
    }
    return op;
}

Term Term::var(int index) {
    Term t;
    t.kind = Kind::Var;
    t.var_index = index;
    return t;
}

Term Term::unary(std::string name, Term sub) {
    Term t;
    t.kind = Kind::Unary;
    t.unary_name = std::move(name);
    t.children.push_back(std::move(sub));
    return t;
}

Term Term::op(int arity, int index, std::vector<Term> subs) {
    if (arity < 1) throw ArityMismatch("operation symbols have arity at least 1");
    if (static_cast<int>(subs.size()) != arity)
        throw ArityMismatch("operation symbol applied to wrong number of subterms");
    Term t;
    t.kind = Kind::Op;
    t.op_arity = arity;
    t.op_index = index;
    t.children = std::move(subs);
    return t;
}

bool Term::operator==(const Term& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Var: return var_index == o.var_index;
        case Kind::Unary: return unary_name == o.unary_name && children == o.children;
        case Kind::Op:
            return op_arity == o.op_arity && op_index == o.op_index &&
                   children == o.children;
    }
    return false;
}

Json Term::to_json() const {
    switch (kind) {
        case Kind::Var: return Json::array({"var", var_index});
        case Kind::Unary:
            return Json::array({"unary", unary_name, children[0].to_json()});
        case Kind::Op: {
            Json subs = Json::array();
            for (const auto& c : children) subs.push_back(c.to_json());
            return Json::array({"op", op_arity, op_index, subs});
        }
    }
    throw UsageError("corrupt term node");
}

Term Term::from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw UsageError("term node must be a nonempty array");
    const std::string tag = j[0].get<std::string>();
    if (tag == "var") {
        if (j.size() != 2) throw UsageError("var node takes one index");
        return Term::var(j[1].get<int>());
    }
    if (tag == "unary") {
        if (j.size() != 3) throw UsageError("unary node takes a name and a subterm");
        return Term::unary(j[1].get<std::string>(), Term::from_json(j[2]));
    }
    if (tag == "op") {
        if (j.size() != 4) throw UsageError("op node takes arity, index, subterms");
        std::vector<Term> subs;
        for (const auto& s : j[3]) subs.push_back(Term::from_json(s));
        return Term::op(j[1].get<int>(), j[2].get<int>(), std::move(subs));
    }
    throw UsageError("unknown term node tag: " + tag);
}

int depth(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Var: return 0;
        case Term::Kind::Unary: return 1 + depth(t.children[0]);
        case Term::Kind::Op: {
            int m = 0;
            for (const auto& c : t.children) m = std::max(m, depth(c));
            return 1 + m;
        }
    }
    return 0;
}

int op_occurrences(const Term& t) {
    int n = t.kind == Term::Kind::Op ? 1 : 0;
    for (const auto& c : t.children) n += op_occurrences(c);
    return n;
}

int needed_point_width(const Term& t) {
    if (t.kind == Term::Kind::Var) return t.var_index + 1;
    int w = 0;
    for (const auto& c : t.children) w = std::max(w, needed_point_width(c));
    return w;
}

std::int64_t evaluate(const Term& t, const Binding& binding, const Tuple& point) {
    switch (t.kind) {
        case Term::Kind::Var: {
            if (t.var_index < 0 || t.var_index >= static_cast<int>(point.size()))
                throw ArityMismatch("point does not cover variable x" +
                                    std::to_string(t.var_index));
            return point[t.var_index];
        }
        case Term::Kind::Unary: {
            auto it = binding.unaries.find(t.unary_name);
            if (it == binding.unaries.end())
                throw UnboundSymbol("unary symbol not bound: " + t.unary_name);
            if (it->second.arity() != 1)
                throw ArityMismatch("binding for " + t.unary_name + " is not unary");
            std::int64_t inner = evaluate(t.children[0], binding, point);
            if (!it->second.domain().contains(inner)) return 0;
            return it->second.value_at({inner});
        }
        case Term::Kind::Op: {
            auto it = binding.ops.find({t.op_arity, t.op_index});
            if (it == binding.ops.end())
                throw UnboundSymbol("operation symbol f^" + std::to_string(t.op_arity) +
                                    "_" + std::to_string(t.op_index) + " not bound");
            if (it->second.arity() != t.op_arity)
                throw ArityMismatch("bound operation arity disagrees with symbol arity");
            Tuple args;
            args.reserve(t.children.size());
            for (const auto& c : t.children) args.push_back(evaluate(c, binding, point));
            for (auto v : args) {
                if (!it->second.domain().contains(v)) return 0;
            }
            return it->second.value_at(args);
        }
    }
    throw UsageError("corrupt term node");
}

namespace {

void all_points(const std::vector<std::vector<std::int64_t>>& boxes, Tuple& scratch,
                std::size_t coord, const std::function<void(const Tuple&)>& visit) {
    if (coord == boxes.size()) {
        visit(scratch);
        return;
    }
    for (auto v : boxes[coord]) {
        scratch[coord] = v;
        all_points(boxes, scratch, coord + 1, visit);
    }
}

} // namespace

std::set<std::int64_t> range_on_box(const FiniteOperation& op,
                                    const std::vector<std::vector<std::int64_t>>& boxes) {
    if (static_cast<int>(boxes.size()) != op.arity())
        throw ArityMismatch("box count does not match operation arity");
    std::set<std::int64_t> out;
    Tuple scratch(boxes.size());
    all_points(boxes, scratch, 0, [&](const Tuple& p) {
        for (auto v : p) {
            if (!op.domain().contains(v)) {
                out.insert(0);
                return;
            }
        }
        out.insert(op.value_at(p));
    });
    return out;
}

std::set<std::int64_t> range_on_box(const Term& t, const Binding& binding,
                                    const std::vector<std::vector<std::int64_t>>& boxes) {
    if (static_cast<int>(boxes.size()) < needed_point_width(t))
        throw ArityMismatch("box count does not cover the term's variables");
    std::set<std::int64_t> out;
    Tuple scratch(boxes.size());
    all_points(boxes, scratch, 0,
               [&](const Tuple& p) { out.insert(evaluate(t, binding, p)); });
    return out;
}

} // namespace clonecert::algebra
