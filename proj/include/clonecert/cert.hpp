#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clonecert/rational.hpp"

namespace clonecert {

using Json = nlohmann::ordered_json;

// Verdict of a single certified claim.  `Pass` and `NotFalsified` map to CLI
// exit 0; `Fail` and `Violated` map to exit 1.
enum class Verdict { Pass, Fail, Violated, NotFalsified };

std::string verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& name);
bool verdict_ok(Verdict v);

// A machine-checkable record of one checked claim: replayable inputs, exact
// values as decimal strings, a verdict, and optional nested sub-certificates.
struct Certificate {
    std::string kind;
    Json inputs = Json::object();
    Verdict verdict = Verdict::Pass;
    Json details = Json::object();
    std::vector<Certificate> sub;

    bool ok() const { return verdict_ok(verdict); }
    Json to_json() const;
    static Certificate from_json(const Json& j);
};

// JSON helpers: exact values always travel as decimal strings so artifacts
// stay byte-stable and loss-free.
Json big_to_json(const BigInt& value);
Json rat_to_json(const BigRat& value);
Json interval_to_json(const RatInterval& iv);

} // namespace clonecert
