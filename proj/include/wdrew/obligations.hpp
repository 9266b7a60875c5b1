#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wdrew/oracle.hpp"
#include "wdrew/proof.hpp"
#include "wdrew/rewrite.hpp"

namespace wdrew {

enum class POKind { Validity, WDPreservation, CaseComplete, TopLevelCondWD, SequentWD };
std::string po_kind_name(POKind k);

// One obligation of a rule (or rule group): its sequent, where it came from,
// and its discharge status. Every obligation carries a SequentWD companion
// asserting the well-definedness of the obligation sequent itself.
struct ProofObligation {
    POKind kind;
    std::string rule_name;
    int case_index = -1; // -1 for group-level obligations

    std::vector<FormulaPtr> hyps;
    FormulaPtr goal;
    SignaturePtr sig;

    enum class Status { Pending, Discharged, Refuted };
    Status status = Status::Pending;
    std::string confidence; // "full" or "bounded" when discharged
    std::optional<Interpretation> counterexample;
    std::string pending_reason;

    std::shared_ptr<ProofObligation> wd_companion; // null for SequentWD itself
    ProofTreePtr proof;                            // optional

    Sequent sequent() const { return Sequent(sig, hyps, goal); }
    std::string str() const;
};

// Obligation builders. Trivially true hypotheses (a condition or D-image
// that reduced to `true`) are dropped from the sequent.
ProofObligation po_validity(const GroupedRule& g, std::size_t case_index, const SignaturePtr& sig);
ProofObligation po_wd_preservation(const GroupedRule& g, std::size_t case_index,
                                   const SignaturePtr& sig);
ProofObligation po_case_complete(const GroupedRule& g, const SignaturePtr& sig);
ProofObligation po_top_level_cond_wd(const GroupedRule& g, const SignaturePtr& sig);
ProofObligation po_sequent_wd(const ProofObligation& parent);

// Discharges one obligation in place: companion first, then the obligation,
// via the auto tactic with oracle refutation. Refutations are replayed
// before they are recorded.
void discharge(ProofObligation& po, const Bounds& bounds);

struct ObligationReport {
    std::vector<ProofObligation> items; // primary obligations, declaration order
    Bounds bounds;

    bool rule_deployable(const std::string& rule) const; // validity + WD per case
    bool all_mandatory_discharged() const;
    std::size_t count(ProofObligation::Status s) const;
    std::string summary() const;
};

// Generates and discharges the standard obligations of every group: validity
// and WD-preservation per case, case-completeness per group. Sets the
// case_complete flag of each rule when its obligation discharges.
ObligationReport discharge_all(std::vector<std::shared_ptr<GroupedRule>>& rules,
                               const SignaturePtr& sig, const Bounds& bounds);

// Syntactic and obligation-based classification of one rule: sets the
// unconditional flag, tries the case-completeness obligation, and, when
// `with_top_level` is set, the top-level-conditions-WD obligation. Returns
// the obligations that were attempted.
std::vector<ProofObligation> classify(GroupedRule& g, const SignaturePtr& sig, const Bounds& bounds,
                                      bool with_top_level);

// Builds the obligation of the given kind and searches for a bounded
// counterexample to it.
CheckResult find_rule_counterexample(const GroupedRule& g, POKind kind, std::size_t case_index,
                                     const SignaturePtr& sig, const Bounds& bounds);

} // namespace wdrew
