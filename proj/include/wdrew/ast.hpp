#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wdrew/errors.hpp"

namespace wdrew {

using Int = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

// Object-language types: INT, given sets, powersets and cartesian products.
// BOOL exists only as the pseudo-type of formulas; no term ever has it.
class Type {
public:
    enum class Kind { Int, Bool, Given, Pow, Prod };

    Type() : rep_(int_rep()) {}

    static Type integer();
    static Type boolean();
    static Type given(std::string name);
    static Type pow(Type elem);
    static Type prod(Type left, Type right);

    Kind kind() const { return rep_->kind; }
    const std::string& given_name() const { return rep_->name; }
    Type elem() const { return Type(rep_->a); }  // Pow
    Type left() const { return Type(rep_->a); }  // Prod
    Type right() const { return Type(rep_->b); } // Prod

    bool operator==(const Type& o) const;
    bool operator!=(const Type& o) const { return !(*this == o); }

    // Depth of POW nesting, used by the oracle's enumeration guard.
    int pow_depth() const;

    std::string str() const;

private:
    struct Rep {
        Kind kind;
        std::string name;
        std::shared_ptr<const Rep> a, b;
    };
    explicit Type(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    static std::shared_ptr<const Rep> int_rep();
    std::shared_ptr<const Rep> rep_;
};

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

class Term;
class Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable term node. Applications use symbolic names ("add", "card", ...);
// the parser, printer and evaluator agree on the symbol table in builtins.cpp.
class Term : public std::enable_shared_from_this<Term> {
public:
    enum class Kind { Var, IntLit, App };

    static TermPtr var(std::string name, Type type);
    static TermPtr lit(Int value);
    static TermPtr app(std::string sym, std::vector<TermPtr> args, Type result);

    Kind kind() const { return kind_; }
    const std::string& sym() const { return sym_; } // Var name or App symbol
    const Int& value() const { return value_; }
    const std::vector<TermPtr>& args() const { return args_; }
    const Type& type() const { return type_; }

    bool equals(const Term& o) const;

private:
    Term() = default;
    Kind kind_ = Kind::IntLit;
    std::string sym_;
    Int value_ = 0;
    std::vector<TermPtr> args_;
    Type type_;
};

inline bool equal_terms(const TermPtr& a, const TermPtr& b) { return a->equals(*b); }

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

// Formula nodes. Or/Imp/Iff/Exists/True are kept as real nodes for readable
// output; their semantics and well-definedness are fixed by expansion into
// the primitive connectives.
class Formula : public std::enable_shared_from_this<Formula> {
public:
    enum class Kind { False, True, Pred, Equal, Not, And, Or, Imp, Iff, Forall, Exists };

    static FormulaPtr false_();
    static FormulaPtr true_();
    static FormulaPtr pred(std::string name, std::vector<TermPtr> args);
    static FormulaPtr equal(TermPtr l, TermPtr r);
    static FormulaPtr not_(FormulaPtr f);
    static FormulaPtr and_(FormulaPtr l, FormulaPtr r);
    static FormulaPtr or_(FormulaPtr l, FormulaPtr r);
    static FormulaPtr imp(FormulaPtr l, FormulaPtr r);
    static FormulaPtr iff(FormulaPtr l, FormulaPtr r);
    static FormulaPtr forall(std::string var, Type var_type, FormulaPtr body);
    static FormulaPtr exists(std::string var, Type var_type, FormulaPtr body);

    Kind kind() const { return kind_; }
    const std::string& pred_name() const { return name_; }
    const std::vector<TermPtr>& term_args() const { return targs_; } // Pred, Equal
    const FormulaPtr& lhs() const { return l_; }                     // binary / Not / binder body
    const FormulaPtr& rhs() const { return r_; }
    const std::string& bound_var() const { return name_; }
    const Type& bound_type() const { return btype_; }
    const FormulaPtr& body() const { return l_; }

    bool equals(const Formula& o) const;

private:
    Formula() = default;
    Kind kind_ = Kind::False;
    std::string name_;             // Pred name or bound variable
    std::vector<TermPtr> targs_;   // Pred args, or Equal's two sides
    FormulaPtr l_, r_;
    Type btype_;
};

inline bool equal_formulas(const FormulaPtr& a, const FormulaPtr& b) { return a->equals(*b); }

// ---------------------------------------------------------------------------
// Positions
// ---------------------------------------------------------------------------

// Path into an AST; children are numbered from 1, the empty path is the root.
using Position = std::vector<std::size_t>;

std::string position_str(const Position& p);
Position parse_position(const std::string& s);

// A node is either a term or a formula; positions may address both.
using Node = std::variant<TermPtr, FormulaPtr>;

inline bool is_term(const Node& n) { return std::holds_alternative<TermPtr>(n); }
inline TermPtr as_term(const Node& n) { return std::get<TermPtr>(n); }
inline FormulaPtr as_formula(const Node& n) { return std::get<FormulaPtr>(n); }
bool equal_nodes(const Node& a, const Node& b);

std::size_t child_count(const Node& n);
Node child_at(const Node& n, std::size_t i); // 1-based

Node subterm_at(const Node& n, const Position& p);
Node replace_at(const Node& n, const Position& p, const Node& replacement);

// All positions whose subtree is a term, in depth-first (pre-order) order.
std::vector<std::pair<Position, TermPtr>> term_positions(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Free variables and substitution
// ---------------------------------------------------------------------------

// Free variables in first-occurrence order, with their types.
std::vector<std::pair<std::string, Type>> free_vars_ordered(const Node& n);
std::set<std::string> free_vars(const FormulaPtr& f);
std::set<std::string> free_vars(const TermPtr& t);

// Finite mapping from variable names to terms. Identity bindings are
// normalized away at construction, so the stored map is exactly Dom.
class Substitution {
public:
    Substitution() = default;
    static Substitution of(std::map<std::string, TermPtr> m);
    static Substitution single(const std::string& var, TermPtr t);

    const std::map<std::string, TermPtr>& mapping() const { return map_; }
    bool empty() const { return map_.empty(); }
    std::set<std::string> dom() const;
    std::vector<TermPtr> ran() const;
    std::set<std::string> range_vars() const;

    std::string str() const;

private:
    std::map<std::string, TermPtr> map_;
};

// True iff no variable occurring in a range term lies in the domain.
bool is_non_conflicting(const Substitution& s);

// Simultaneous replacement of free occurrences. Throws capture_error when a
// binder variable is in Dom or among the range variables, and type_error when
// a binding disagrees with the variable's type.
TermPtr apply_subst(const Substitution& s, const TermPtr& t);
FormulaPtr apply_subst(const Substitution& s, const FormulaPtr& f);

} // namespace wdrew
