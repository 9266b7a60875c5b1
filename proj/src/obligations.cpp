#include "wdrew/obligations.hpp"

#include <sstream>

#include "wdrew/printer.hpp"
#include "wdrew/wd.hpp"

namespace wdrew {

std::string po_kind_name(POKind k) {
    switch (k) {
    case POKind::Validity: return "validity";
    case POKind::WDPreservation: return "wd-preservation";
    case POKind::CaseComplete: return "case-complete";
    case POKind::TopLevelCondWD: return "top-level-conditions-wd";
    case POKind::SequentWD: return "sequent-wd";
    }
    return "?";
}

std::string ProofObligation::str() const {
    std::ostringstream os;
    os << rule_name;
    if (case_index >= 0) os << "[" << case_index + 1 << "]";
    os << " " << po_kind_name(kind) << ": ";
    os << sequent().str();
    return os.str();
}

namespace {

void push_nontrivial(std::vector<FormulaPtr>& hyps, const FormulaPtr& f) {
    if (f->kind() != Formula::Kind::True) hyps.push_back(f);
}

FormulaPtr disjunction_of_conditions(const GroupedRule& g) {
    FormulaPtr d = g.cases[0].condition;
    for (std::size_t i = 1; i < g.cases.size(); ++i) d = Formula::or_(d, g.cases[i].condition);
    return d;
}

ProofObligation base_po(POKind kind, const GroupedRule& g, int case_index,
                        const SignaturePtr& sig) {
    ProofObligation po;
    po.kind = kind;
    po.rule_name = g.name;
    po.case_index = case_index;
    po.sig = sig;
    return po;
}

} // namespace

ProofObligation po_validity(const GroupedRule& g, std::size_t case_index, const SignaturePtr& sig) {
    auto po = base_po(POKind::Validity, g, static_cast<int>(case_index), sig);
    push_nontrivial(po.hyps, g.cases[case_index].condition);
    po.goal = Formula::equal(g.lhs, g.cases[case_index].rhs);
    po.wd_companion = std::make_shared<ProofObligation>(po_sequent_wd(po));
    return po;
}

ProofObligation po_wd_preservation(const GroupedRule& g, std::size_t case_index,
                                   const SignaturePtr& sig) {
    auto po = base_po(POKind::WDPreservation, g, static_cast<int>(case_index), sig);
    push_nontrivial(po.hyps, wd_term(g.lhs, *sig));
    push_nontrivial(po.hyps, g.cases[case_index].condition);
    po.goal = wd_term(g.cases[case_index].rhs, *sig);
    po.wd_companion = std::make_shared<ProofObligation>(po_sequent_wd(po));
    return po;
}

ProofObligation po_case_complete(const GroupedRule& g, const SignaturePtr& sig) {
    auto po = base_po(POKind::CaseComplete, g, -1, sig);
    po.goal = disjunction_of_conditions(g);
    po.wd_companion = std::make_shared<ProofObligation>(po_sequent_wd(po));
    return po;
}

ProofObligation po_top_level_cond_wd(const GroupedRule& g, const SignaturePtr& sig) {
    auto po = base_po(POKind::TopLevelCondWD, g, -1, sig);
    FormulaPtr conj = Formula::true_();
    for (const auto& c : g.cases) conj = wd_and(conj, wd_formula(c.condition, *sig));
    po.goal = Formula::imp(wd_term(g.lhs, *sig), conj);
    po.wd_companion = std::make_shared<ProofObligation>(po_sequent_wd(po));
    return po;
}

ProofObligation po_sequent_wd(const ProofObligation& parent) {
    ProofObligation po;
    po.kind = POKind::SequentWD;
    po.rule_name = parent.rule_name;
    po.case_index = parent.case_index;
    po.sig = parent.sig;
    po.goal = wd_sequent(parent.hyps, parent.goal, *parent.sig);
    return po;
}

// ---------------------------------------------------------------------------
// Discharge
// ---------------------------------------------------------------------------

void discharge(ProofObligation& po, const Bounds& bounds) {
    if (po.wd_companion) {
        discharge(*po.wd_companion, bounds);
        if (po.wd_companion->status != ProofObligation::Status::Discharged) {
            po.status = ProofObligation::Status::Pending;
            po.pending_reason = "well-definedness of the obligation sequent did not discharge";
            return;
        }
    }
    DischargeOutcome out = auto_discharge(po.sequent(), bounds);
    if (out.ok()) {
        po.status = ProofObligation::Status::Discharged;
        po.proof = out.tree;
        po.confidence = out.tree->bounded_confidence() ? "bounded" : "full";
        return;
    }
    if (out.cex) {
        // refutations must replay before they are recorded
        if (!replay_counterexample(po.hyps, po.goal, *po.sig, bounds, *out.cex)) {
            po.status = ProofObligation::Status::Pending;
            po.pending_reason = "counterexample failed to replay";
            return;
        }
        po.status = ProofObligation::Status::Refuted;
        po.counterexample = out.cex;
        return;
    }
    po.status = ProofObligation::Status::Pending;
    po.pending_reason = out.failure_reason;
}

bool ObligationReport::rule_deployable(const std::string& rule) const {
    bool saw = false;
    for (const auto& po : items) {
        if (po.rule_name != rule) continue;
        if (po.kind == POKind::Validity || po.kind == POKind::WDPreservation) {
            saw = true;
            if (po.status != ProofObligation::Status::Discharged) return false;
        }
    }
    return saw;
}

bool ObligationReport::all_mandatory_discharged() const {
    for (const auto& po : items)
        if ((po.kind == POKind::Validity || po.kind == POKind::WDPreservation) &&
            po.status != ProofObligation::Status::Discharged)
            return false;
    return true;
}

std::size_t ObligationReport::count(ProofObligation::Status s) const {
    std::size_t n = 0;
    for (const auto& po : items)
        if (po.status == s) ++n;
    return n;
}

std::string ObligationReport::summary() const {
    std::ostringstream os;
    os << items.size() << " obligations, " << count(ProofObligation::Status::Discharged)
       << " discharged, " << count(ProofObligation::Status::Refuted) << " refuted, "
       << count(ProofObligation::Status::Pending) << " pending";
    return os.str();
}

ObligationReport discharge_all(std::vector<std::shared_ptr<GroupedRule>>& rules,
                               const SignaturePtr& sig, const Bounds& bounds) {
    ObligationReport report;
    report.bounds = bounds;
    for (auto& g : rules) {
        g->unconditional =
            g->cases.size() == 1 && g->cases[0].condition->kind() == Formula::Kind::True;
        for (std::size_t i = 0; i < g->cases.size(); ++i) {
            auto v = po_validity(*g, i, sig);
            discharge(v, bounds);
            report.items.push_back(std::move(v));
            auto w = po_wd_preservation(*g, i, sig);
            discharge(w, bounds);
            report.items.push_back(std::move(w));
        }
        auto cc = po_case_complete(*g, sig);
        discharge(cc, bounds);
        g->case_complete = cc.status == ProofObligation::Status::Discharged;
        report.items.push_back(std::move(cc));
    }
    return report;
}

std::vector<ProofObligation> classify(GroupedRule& g, const SignaturePtr& sig, const Bounds& bounds,
                                      bool with_top_level) {
    g.unconditional = g.cases.size() == 1 && g.cases[0].condition->kind() == Formula::Kind::True;
    std::vector<ProofObligation> out;
    auto cc = po_case_complete(g, sig);
    discharge(cc, bounds);
    g.case_complete = cc.status == ProofObligation::Status::Discharged;
    out.push_back(std::move(cc));
    if (with_top_level) {
        auto tl = po_top_level_cond_wd(g, sig);
        discharge(tl, bounds);
        g.top_level_conditions_wd = tl.status == ProofObligation::Status::Discharged;
        out.push_back(std::move(tl));
    }
    return out;
}

CheckResult find_rule_counterexample(const GroupedRule& g, POKind kind, std::size_t case_index,
                                     const SignaturePtr& sig, const Bounds& bounds) {
    ProofObligation po;
    switch (kind) {
    case POKind::Validity: po = po_validity(g, case_index, sig); break;
    case POKind::WDPreservation: po = po_wd_preservation(g, case_index, sig); break;
    case POKind::CaseComplete: po = po_case_complete(g, sig); break;
    case POKind::TopLevelCondWD: po = po_top_level_cond_wd(g, sig); break;
    case POKind::SequentWD: throw error("sequent-wd obligations belong to a parent obligation");
    }
    return check_sequent(po.hyps, po.goal, *sig, bounds);
}

} // namespace wdrew
