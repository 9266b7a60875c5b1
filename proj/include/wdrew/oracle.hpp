#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wdrew/ast.hpp"
#include "wdrew/signature.hpp"

namespace wdrew {

// ---------------------------------------------------------------------------
// Values of the bounded semantics
// ---------------------------------------------------------------------------

// A ground value: integer, element of a given set, pair, or finite set.
// Sets are kept sorted and deduplicated, so equality is structural.
class Value {
public:
    enum class Kind { Int, Given, Pair, Set };

    static Value integer(Int v);
    static Value given(std::string set, int index); // index is 1-based
    static Value pair(Value a, Value b);
    static Value set(std::vector<Value> elems);

    Kind kind() const { return kind_; }
    const Int& int_value() const { return i_; }
    const std::string& given_set() const { return gname_; }
    int given_index() const { return gidx_; }
    const Value& first() const { return elems_[0]; }
    const Value& second() const { return elems_[1]; }
    const std::vector<Value>& elems() const { return elems_; }

    int cmp(const Value& o) const;
    bool operator==(const Value& o) const { return cmp(o) == 0; }
    bool operator!=(const Value& o) const { return cmp(o) != 0; }
    bool operator<(const Value& o) const { return cmp(o) < 0; }

    std::string str() const;

private:
    Kind kind_ = Kind::Int;
    Int i_ = 0;
    std::string gname_;
    int gidx_ = 0;
    std::vector<Value> elems_;
};

// ---------------------------------------------------------------------------
// Bounds, interpretations, results
// ---------------------------------------------------------------------------

// Finite enumeration bounds: integer window, carrier size for given sets,
// allowed POW nesting, and the evaluation-step budget that converts
// blow-ups into explicit unknowns.
struct Bounds {
    long long int_lo = -3;
    long long int_hi = 3;
    int given_size = 3;
    int max_nesting = 2;
    std::uint64_t budget = 10'000'000;

    std::string str() const;
};

enum class TriBool { True, False, Undef };
std::string tribool_str(TriBool t);

// A bounded model: one value per enumerated free variable, in enumeration
// (declaration) order.
struct Interpretation {
    std::vector<std::pair<std::string, Value>> assignment;

    const Value* lookup(const std::string& name) const;
    std::string str() const;
};

struct CheckResult {
    enum class Status { BoundedValid, Counterexample, Unknown };
    Status status = Status::BoundedValid;
    Int models_checked = 0;
    std::optional<Interpretation> cex;
    std::string reason; // Unknown only

    bool valid() const { return status == Status::BoundedValid; }
    std::string str() const;
};

// ---------------------------------------------------------------------------
// Enumeration of bounded domains
// ---------------------------------------------------------------------------

// Number of values of the type within bounds. Throws when POW nesting
// exceeds bounds.max_nesting.
Int domain_size(const Type& t, const Bounds& b);

// The index-th value of the type, 0 <= index < domain_size. Integers
// ascend, given-set elements ascend, pairs vary the right component
// fastest, and sets follow bitmask order over their base domain.
Value value_at(const Type& t, const Int& index, const Bounds& b);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

using Env = std::map<std::string, Value>;

// Strict bounded evaluator with a work budget. eval_term returns nullopt
// for ill-defined terms; eval3 implements strong Kleene tables with
// quantifiers ranging over the bounded domain of the bound variable's type.
class Evaluator {
public:
    Evaluator(const Signature& sig, const Bounds& b);

    std::optional<Value> eval_term(const TermPtr& t, const Env& env);
    TriBool eval3(const FormulaPtr& f, const Env& env);
    // Two-valued reading; only legal on formulas that never go undefined
    // (D-images). Throws on Undef.
    bool eval2(const FormulaPtr& f, const Env& env);

    std::uint64_t work() const { return work_; }

    struct budget_exhausted {};

private:
    void tick();
    const Signature& sig_;
    Bounds bounds_;
    std::uint64_t work_ = 0;
};

// Raised when a term mentions a user operator, which the bounded semantics
// cannot interpret.
struct uninterpreted_error : error {
    explicit uninterpreted_error(const std::string& sym)
        : error("uninterpreted operator '" + sym + "' cannot be evaluated at bounded scale") {}
};

// ---------------------------------------------------------------------------
// Bounded sequent checking
// ---------------------------------------------------------------------------

// Exhaustively searches bounded models for a counterexample to H |- G under
// the well-defined reading: a counterexample makes every D(H), D(G) and H
// true while G is not true. Free variables are enumerated in signature
// declaration order; the first counterexample in that order is returned.
CheckResult check_sequent(const std::vector<FormulaPtr>& hyps, const FormulaPtr& goal,
                          const Signature& sig, const Bounds& bounds);

// Replays a stored counterexample: true iff the interpretation still
// violates the sequent.
bool replay_counterexample(const std::vector<FormulaPtr>& hyps, const FormulaPtr& goal,
                           const Signature& sig, const Bounds& bounds,
                           const Interpretation& interp);

} // namespace wdrew
