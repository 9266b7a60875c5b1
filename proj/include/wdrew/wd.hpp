#pragma once

#include "wdrew/ast.hpp"
#include "wdrew/signature.hpp"

namespace wdrew {

// Conjunction/disjunction/quantification with the trivial-true absorber:
// true & p -> p, true or p -> true, !x. true -> true (and the mirrored
// cases). Used for every generated well-definedness formula; no deeper
// simplification happens on the trusted path.
FormulaPtr wd_and(FormulaPtr a, FormulaPtr b);
FormulaPtr wd_or(FormulaPtr a, FormulaPtr b);
FormulaPtr wd_forall(const std::string& var, const Type& t, FormulaPtr body);

// The D operator. Variables and literals are well-defined; an application
// conjoins its arguments' conditions with the symbol's domain condition from
// the registry (builtins in wd.cpp, user operators from the signature).
FormulaPtr wd_term(const TermPtr& t, const Signature& sig);

// D on formulas, following the recursive expansions; derived connectives
// (or, =>, <=>, #) are expanded first.
FormulaPtr wd_formula(const FormulaPtr& f, const Signature& sig);

// D(H |- G) = D(!xs . (H1 & ... & Hn) => G) over the free variables xs of
// H and G, in first-occurrence order.
FormulaPtr wd_sequent(const std::vector<FormulaPtr>& hyps, const FormulaPtr& goal,
                      const Signature& sig);

// The domain condition of a single symbol instantiated at the given
// arguments (true for total symbols). Throws on unknown symbols.
FormulaPtr wd_condition_for(const std::string& sym, const std::vector<TermPtr>& args,
                            const Signature& sig);

// True iff every function symbol in the node is total per the registry.
// Required of user `wd` clauses so that D(D(.)) stays trivially valid.
bool total_symbols_only(const Node& n, const Signature& sig);

} // namespace wdrew
