#include "clonecert/cert.hpp"

#include "clonecert/errors.hpp"

namespace clonecert {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Violated: return "violated";
        case Verdict::NotFalsified: return "not-falsified";
    }
    return "fail";
}

Verdict verdict_from_name(const std::string& name) {
    if (name == "pass") return Verdict::Pass;
    if (name == "fail") return Verdict::Fail;
    if (name == "violated") return Verdict::Violated;
    if (name == "not-falsified") return Verdict::NotFalsified;
    throw UsageError("unknown verdict: " + name);
}

bool verdict_ok(Verdict v) {
    return v == Verdict::Pass || v == Verdict::NotFalsified;
}

Json Certificate::to_json() const {
    Json j;
    j["kind"] = kind;
    j["inputs"] = inputs;
    j["verdict"] = verdict_name(verdict);
    j["details"] = details;
    if (!sub.empty()) {
        Json arr = Json::array();
        for (const auto& c : sub) arr.push_back(c.to_json());
        j["sub"] = arr;
    }
    return j;
}

Certificate Certificate::from_json(const Json& j) {
    Certificate c;
    c.kind = j.at("kind").get<std::string>();
    c.inputs = j.value("inputs", Json::object());
    c.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    c.details = j.value("details", Json::object());
    if (j.contains("sub")) {
        for (const auto& s : j["sub"]) c.sub.push_back(Certificate::from_json(s));
    }
    return c;
}

Json big_to_json(const BigInt& value) { return value.str(); }

Json rat_to_json(const BigRat& value) { return format_rational(value); }

Json interval_to_json(const RatInterval& iv) {
    Json j;
    j["lo"] = format_rational(iv.lo);
    j["hi"] = format_rational(iv.hi);
    j["exact"] = iv.is_point();
    return j;
}

} // namespace clonecert
