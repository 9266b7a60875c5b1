#include "wdrew/signature.hpp"

#include <algorithm>

namespace wdrew {

// Precedence levels for term operators, low to high:
//   1 maplet  2 set ops (union/inter/diff/ovl)  3 range  4 add/sub  5 mul/div
// Formula operators live on a separate scale in the parser.
const std::vector<BuiltinFunc>& builtin_functions() {
    static const std::vector<BuiltinFunc> table = {
        {"maplet", "|->", 2, Fixity::Infix, 1, true},
        {"union", "\\/", 2, Fixity::Infix, 2, true},
        {"inter", "/\\", 2, Fixity::Infix, 2, true},
        {"diff", "\\", 2, Fixity::Infix, 2, true},
        {"ovl", "ovl", 2, Fixity::Infix, 2, true},
        {"range", "..", 2, Fixity::Infix, 3, true},
        {"add", "+", 2, Fixity::Infix, 4, true},
        {"sub", "-", 2, Fixity::Infix, 4, true},
        {"mul", "*", 2, Fixity::Infix, 5, true},
        {"div", "/", 2, Fixity::Infix, 5, false},
        {"neg", "-", 1, Fixity::Prefix, 6, true},
        {"card", "card", 1, Fixity::Call, 0, false},
        {"dom", "dom", 1, Fixity::Call, 0, true},
        {"ran", "ran", 1, Fixity::Call, 0, true},
        {"apply", "", 2, Fixity::Call, 0, false}, // printed t(x)
        {"empty", "{}", 0, Fixity::Atom, 0, true},
        {"enum", "{", -1, Fixity::Atom, 0, true}, // printed {a, b, ...}
    };
    return table;
}

const std::vector<BuiltinPred>& builtin_predicates() {
    static const std::vector<BuiltinPred> table = {
        {"le", "<=", 2, Fixity::Infix},
        {"lt", "<", 2, Fixity::Infix},
        {"ge", ">=", 2, Fixity::Infix},
        {"gt", ">", 2, Fixity::Infix},
        {"mem", "in", 2, Fixity::Infix},
        {"finite", "finite", 1, Fixity::Call},
        {"functional", "functional", 1, Fixity::Call},
    };
    return table;
}

const BuiltinFunc* builtin_function(const std::string& sym) {
    for (const auto& f : builtin_functions())
        if (f.name == sym) return &f;
    return nullptr;
}

const BuiltinPred* builtin_predicate(const std::string& sym) {
    for (const auto& p : builtin_predicates())
        if (p.name == sym) return &p;
    return nullptr;
}

bool Signature::is_reserved(const std::string& name) {
    static const std::vector<std::string> keywords = {
        "card", "dom",  "ran",   "ovl",        "in",    "finite", "functional", "not",
        "or",   "true", "false", "INT",        "BOOL",  "POW",    "theory",     "sets",
        "end",  "rule", "auto",  "manual",     "wd",    "rewrite", "metavariables", "operators",
    };
    return std::find(keywords.begin(), keywords.end(), name) != keywords.end();
}

Signature::Signature() = default;

void Signature::check_fresh(const std::string& name) const {
    if (is_reserved(name)) throw type_error("name '" + name + "' is reserved");
    if (has_given_set(name)) throw type_error("name '" + name + "' already names a given set");
    if (variable_type(name)) throw type_error("name '" + name + "' already names a variable");
    if (user_function(name)) throw type_error("name '" + name + "' already names an operator");
}

void Signature::add_given_set(const std::string& name) {
    check_fresh(name);
    given_sets_.push_back(name);
}

void Signature::add_variable(const std::string& name, const Type& type) {
    check_fresh(name);
    if (type.kind() == Type::Kind::Bool)
        throw type_error("BOOL is a formula type; variable '" + name + "' cannot have it");
    variables_.emplace_back(name, type);
}

void Signature::add_function(UserFunc f) {
    check_fresh(f.name);
    user_functions_.push_back(std::move(f));
}

bool Signature::has_given_set(const std::string& name) const {
    return std::find(given_sets_.begin(), given_sets_.end(), name) != given_sets_.end();
}

std::optional<Type> Signature::variable_type(const std::string& name) const {
    for (const auto& [n, t] : variables_)
        if (n == name) return t;
    return std::nullopt;
}

const UserFunc* Signature::user_function(const std::string& name) const {
    for (const auto& f : user_functions_)
        if (f.name == name) return &f;
    return nullptr;
}

Signature Signature::with_variable(const std::string& name, const Type& type) const {
    Signature s = *this;
    s.add_variable(name, type);
    return s;
}

} // namespace wdrew
