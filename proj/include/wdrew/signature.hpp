#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wdrew/ast.hpp"

namespace wdrew {

// A user-declared function symbol, typically introduced by a theory file.
// `wd_condition` is the symbol's domain condition over `params`; a null
// condition means the symbol is total.
struct UserFunc {
    std::string name;
    std::vector<std::pair<std::string, Type>> params;
    Type result;
    FormulaPtr wd_condition; // may be null
};

// Names and typing context shared by every formula of a development:
// given sets, user function symbols, and typed free variables (the paper's V,
// which doubles as the metavariable list of a theory). Variable order is
// declaration order; the oracle enumerates models in that order.
class Signature {
public:
    Signature();

    void add_given_set(const std::string& name);
    void add_variable(const std::string& name, const Type& type);
    void add_function(UserFunc f);

    bool has_given_set(const std::string& name) const;
    std::optional<Type> variable_type(const std::string& name) const;
    const UserFunc* user_function(const std::string& name) const;

    const std::vector<std::string>& given_sets() const { return given_sets_; }
    const std::vector<std::pair<std::string, Type>>& variables() const { return variables_; }
    const std::vector<UserFunc>& user_functions() const { return user_functions_; }

    // Copy with one extra variable; used when a kernel rule frees a binder.
    Signature with_variable(const std::string& name, const Type& type) const;

    // True for names that may not be used as variables or given sets.
    static bool is_reserved(const std::string& name);

private:
    void check_fresh(const std::string& name) const;
    std::vector<std::string> given_sets_;
    std::vector<std::pair<std::string, Type>> variables_;
    std::vector<UserFunc> user_functions_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

// ---------------------------------------------------------------------------
// Builtin symbols
// ---------------------------------------------------------------------------

// How an application prints: prefix call f(a, b), infix a op b, or atoms.
enum class Fixity { Call, Infix, Prefix, Atom };

struct BuiltinFunc {
    std::string name;     // internal symbol
    std::string display;  // concrete syntax (infix operator or call name)
    int arity;            // -1 for variadic (set enumeration)
    Fixity fixity;
    int precedence;       // for infix printing/parsing
    bool total;           // false iff the symbol owns a non-trivial wd condition
};

struct BuiltinPred {
    std::string name;
    std::string display;
    int arity;
    Fixity fixity;
};

const std::vector<BuiltinFunc>& builtin_functions();
const std::vector<BuiltinPred>& builtin_predicates();
const BuiltinFunc* builtin_function(const std::string& sym);
const BuiltinPred* builtin_predicate(const std::string& sym);

} // namespace wdrew
