#pragma once

#include <map>
#include <string>

#include "wdrew/proof.hpp"
#include "wdrew/serialize.hpp"

namespace wdrew {

// Context needed to read a serialized proof back: the base signature and the
// deployed rules referenced by rewrite steps.
struct ProofContext {
    SignaturePtr sig;
    std::map<std::string, GroupedRulePtr> rules;
};

// Line-oriented indented text: each node is a `seq:` line followed by a
// `rule:` line, children indented two spaces. Variables a kernel step freed
// from a binder are redeclared inline as `[x : T]` prefixes.
std::string tree_to_text(const ProofTreePtr& t);
ProofTreePtr tree_from_text(const std::string& text, const ProofContext& ctx);

Json tree_to_json(const ProofTreePtr& t);
ProofTreePtr tree_from_json(const Json& j, const ProofContext& ctx);

} // namespace wdrew
