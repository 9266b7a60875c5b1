#pragma once

#include <optional>

#include "wdrew/kernel.hpp"
#include "wdrew/oracle.hpp"
#include "wdrew/rewrite.hpp"

namespace wdrew {

// Rule schemas of the WD-preserving calculus, the two derived WD rules, the
// rewrite proof steps, and the bounded-oracle closure marker.
enum class RuleId {
    Hyp, Mon, Contr, BotHyp, NegGoal, NegHyp, AndGoal, AndHyp, AllGoal, EqGoal, EqHyp,
    Cut, AllHyp, GoalWD, HypWD, RewriteHyp, RewriteGoal, OracleClose
};

std::string rule_name(RuleId id);
std::optional<RuleId> rule_from_name(const std::string& name);

struct RuleParams {
    std::optional<std::size_t> hyp_index; // 0-based; printed 1-based
    FormulaPtr formula;                   // cut's P, eqHyp's pattern
    TermPtr term;                         // allHyp's E
    std::string var;                      // eqHyp's x
    std::shared_ptr<const Application> app; // rewrite steps
};

// Applies a rule schema to a sequent and returns its premises in schema
// order (boxed WD premises first where the schema has them). Throws
// schema_error when the rule does not apply or a side condition fails.
std::vector<Sequent> apply_rule(const Sequent& s, RuleId rule, const RuleParams& params);

// ---------------------------------------------------------------------------
// Proof trees
// ---------------------------------------------------------------------------

struct ProofTree;
using ProofTreePtr = std::shared_ptr<const ProofTree>;

struct ProofTree {
    Sequent conclusion;
    RuleId rule;
    RuleParams params;
    std::vector<ProofTreePtr> children;
    std::optional<Bounds> oracle_bounds; // OracleClose leaves

    static ProofTreePtr make(Sequent conclusion, RuleId rule, RuleParams params,
                             std::vector<ProofTreePtr> children,
                             std::optional<Bounds> oracle_bounds = std::nullopt);

    bool bounded_confidence() const; // true iff any oracle leaf below
    std::size_t node_count() const;
};

struct CheckTreeResult {
    bool accepted = false;
    std::string confidence;              // "full" or "bounded"
    std::vector<std::size_t> reject_path; // child indices from the root
    std::string reason;

    std::string str() const;
};

// Re-derives every node via apply_rule (oracle leaves re-run the bounded
// check at their recorded bounds) and compares premise lists exactly.
CheckTreeResult check_tree(const ProofTreePtr& t);

// ---------------------------------------------------------------------------
// Auto tactic
// ---------------------------------------------------------------------------

struct DischargeOutcome {
    ProofTreePtr tree;                 // set on success
    std::optional<Interpretation> cex; // first oracle counterexample, if any
    std::string failure_reason;

    bool ok() const { return tree != nullptr; }
};

// Fixed deterministic tactic: close by botHyp/hyp/eqGoal, decompose
// conjunctions, and close remaining leaves through the bounded oracle.
// The returned tree always passes check_tree.
DischargeOutcome auto_discharge(const Sequent& s, const Bounds& bounds);

} // namespace wdrew
