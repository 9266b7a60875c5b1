#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wdrew/ast.hpp"
#include "wdrew/kernel.hpp"

namespace wdrew {

// One case of a grouped conditional rewrite rule: condition c and
// right-hand side r.
struct RewriteCase {
    FormulaPtr condition;
    TermPtr rhs;
};

// Conditional rewrite rules sharing one left-hand side, applied as a case
// split. The soundness flags gate the simplified proof-step schemas and are
// only set once the corresponding obligation has been discharged.
struct GroupedRule {
    std::string name;
    bool automatic = false; // may be applied without user intervention
    TermPtr lhs;
    std::vector<RewriteCase> cases;

    bool unconditional = false;           // single case with condition true (syntactic)
    bool case_complete = false;           // |- c1 or ... or cn discharged
    bool top_level_conditions_wd = false; // |- D(l) => D(c1) & ... & D(cn) discharged
    bool lhs_is_variable = false;         // diagnosed; rule is never applicable

    std::set<std::string> metavars() const { return free_vars(lhs); }

    // Throws unless every case satisfies the rewrite-rule restrictions:
    // Var(c) and Var(r) inside Var(l), and r's type equal to l's.
    void validate() const;
};

using GroupedRulePtr = std::shared_ptr<const GroupedRule>;

// One-way matching: the unique substitution with domain inside `metavars`
// mapping `pattern` onto `subject`, or nothing. Non-linear patterns require
// syntactically equal bindings.
std::optional<Substitution> match(const TermPtr& pattern, const TermPtr& subject,
                                  const std::set<std::string>& metavars);

// Where and how a rule applies: a hypothesis index (or the goal), a term
// position in that formula, and the matching substitution.
struct Application {
    int hyp_index = -1; // -1 targets the goal
    Position pos;
    Substitution subst;
    GroupedRulePtr rule;

    bool targets_goal() const { return hyp_index < 0; }
    std::string str() const;
};

// Every valid application of the given rules to the sequent, in
// deterministic order: hypotheses before goal, positions depth-first, rules
// in declaration order. Matches whose substitution would conflict or whose
// instantiated cases would capture bound variables are excluded.
std::vector<Application> find_applications(const std::vector<GroupedRulePtr>& rules,
                                           const Sequent& s);

// Emits the premise sequents of the rewrite proof step for the application:
// the general schema produces the WD-of-disjunction premise, the disjunction
// premise and one branch per case; unconditional rules produce a single
// rewritten premise; case-complete rules drop the disjunction premise; a
// discharged top-level-conditions flag drops the WD premise at top-level
// occurrences.
std::vector<Sequent> rewrite_step(const Sequent& s, const Application& app);

// True iff the path to p crosses only negations before entering a predicate
// or equality atom, i.e. the addressed term occurs at top level.
bool is_top_level(const FormulaPtr& f, const Position& p);

} // namespace wdrew
