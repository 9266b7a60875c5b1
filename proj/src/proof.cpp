#include "wdrew/proof.hpp"

#include <algorithm>

#include "wdrew/printer.hpp"
#include "wdrew/wd.hpp"

namespace wdrew {

std::string rule_name(RuleId id) {
    switch (id) {
    case RuleId::Hyp: return "hyp";
    case RuleId::Mon: return "mon";
    case RuleId::Contr: return "contr";
    case RuleId::BotHyp: return "botHyp";
    case RuleId::NegGoal: return "negGoal";
    case RuleId::NegHyp: return "negHyp";
    case RuleId::AndGoal: return "andGoal";
    case RuleId::AndHyp: return "andHyp";
    case RuleId::AllGoal: return "allGoal";
    case RuleId::EqGoal: return "eqGoal";
    case RuleId::EqHyp: return "eqHyp";
    case RuleId::Cut: return "cut";
    case RuleId::AllHyp: return "allHyp";
    case RuleId::GoalWD: return "goalWD";
    case RuleId::HypWD: return "hypWD";
    case RuleId::RewriteHyp: return "rewriteHyp";
    case RuleId::RewriteGoal: return "rewriteGoal";
    case RuleId::OracleClose: return "oracle";
    }
    return "?";
}

std::optional<RuleId> rule_from_name(const std::string& name) {
    static const std::vector<RuleId> all = {
        RuleId::Hyp,     RuleId::Mon,     RuleId::Contr,   RuleId::BotHyp, RuleId::NegGoal,
        RuleId::NegHyp,  RuleId::AndGoal, RuleId::AndHyp,  RuleId::AllGoal, RuleId::EqGoal,
        RuleId::EqHyp,   RuleId::Cut,     RuleId::AllHyp,  RuleId::GoalWD, RuleId::HypWD,
        RuleId::RewriteHyp, RuleId::RewriteGoal, RuleId::OracleClose};
    for (RuleId id : all)
        if (rule_name(id) == name) return id;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// apply_rule
// ---------------------------------------------------------------------------

namespace {

std::size_t need_hyp(const Sequent& s, const RuleParams& p, const char* rule) {
    if (!p.hyp_index) throw schema_error(std::string(rule) + " needs a hypothesis index");
    if (*p.hyp_index >= s.hyps().size())
        throw schema_error(std::string(rule) + ": hypothesis index out of range");
    return *p.hyp_index;
}

} // namespace

std::vector<Sequent> apply_rule(const Sequent& s, RuleId rule, const RuleParams& params) {
    const Signature& sig = *s.sig();
    switch (rule) {
    case RuleId::Hyp: {
        for (const auto& h : s.hyps())
            if (h->equals(*s.goal())) return {};
        throw schema_error("hyp: the goal is not among the hypotheses");
    }
    case RuleId::BotHyp: {
        for (const auto& h : s.hyps())
            if (h->kind() == Formula::Kind::False) return {};
        throw schema_error("botHyp: no false hypothesis");
    }
    case RuleId::EqGoal: {
        if (s.goal()->kind() != Formula::Kind::Equal ||
            !s.goal()->term_args()[0]->equals(*s.goal()->term_args()[1]))
            throw schema_error("eqGoal: goal is not a trivial equality E = E");
        return {};
    }
    case RuleId::Mon: {
        std::size_t i = need_hyp(s, params, "mon");
        return {s.without_hyp(i)};
    }
    case RuleId::Contr: {
        Sequent p = s.with_extra_hyp(Formula::not_(s.goal())).with_goal(Formula::false_());
        return {p};
    }
    case RuleId::NegGoal: {
        if (s.goal()->kind() != Formula::Kind::Not)
            throw schema_error("negGoal: goal is not a negation");
        return {s.with_extra_hyp(s.goal()->lhs()).with_goal(Formula::false_())};
    }
    case RuleId::NegHyp: {
        std::size_t i = need_hyp(s, params, "negHyp");
        const FormulaPtr& h = s.hyps()[i];
        if (h->kind() != Formula::Kind::Not)
            throw schema_error("negHyp: hypothesis is not a negation");
        return {s.without_hyp(i).with_goal(h->lhs())};
    }
    case RuleId::AndGoal: {
        if (s.goal()->kind() != Formula::Kind::And)
            throw schema_error("andGoal: goal is not a conjunction");
        return {s.with_goal(s.goal()->lhs()), s.with_goal(s.goal()->rhs())};
    }
    case RuleId::AndHyp: {
        std::size_t i = need_hyp(s, params, "andHyp");
        const FormulaPtr& h = s.hyps()[i];
        if (h->kind() != Formula::Kind::And)
            throw schema_error("andHyp: hypothesis is not a conjunction");
        auto hs = s.hyps();
        hs[i] = h->lhs();
        hs.insert(hs.begin() + static_cast<std::ptrdiff_t>(i) + 1, h->rhs());
        return {s.with_hyps(std::move(hs))};
    }
    case RuleId::AllGoal: {
        if (s.goal()->kind() != Formula::Kind::Forall)
            throw schema_error("allGoal: goal is not universally quantified");
        const std::string& x = s.goal()->bound_var();
        for (const auto& h : s.hyps())
            if (free_vars(h).count(x))
                throw schema_error("allGoal: side condition violated, '" + x +
                                   "' occurs free in a hypothesis");
        if (s.sig()->variable_type(x))
            throw schema_error("allGoal: '" + x + "' is already declared in the signature");
        auto sig2 = std::make_shared<Signature>(
            s.sig()->with_variable(x, s.goal()->bound_type()));
        return {Sequent(sig2, s.hyps(), s.goal()->body())};
    }
    case RuleId::EqHyp: {
        std::size_t i = need_hyp(s, params, "eqHyp");
        const FormulaPtr& h = s.hyps()[i];
        if (h->kind() != Formula::Kind::Equal)
            throw schema_error("eqHyp: hypothesis is not an equality");
        if (!params.formula || params.var.empty())
            throw schema_error("eqHyp needs the abstraction pattern P and variable x");
        const TermPtr& e = h->term_args()[0];
        const TermPtr& f = h->term_args()[1];
        FormulaPtr with_f = apply_subst(Substitution::single(params.var, f), params.formula);
        if (!with_f->equals(*s.goal()))
            throw schema_error("eqHyp: goal is not [x := F]P for the given pattern");
        FormulaPtr with_e = apply_subst(Substitution::single(params.var, e), params.formula);
        return {s.without_hyp(i).with_goal(with_e)};
    }
    case RuleId::Cut: {
        if (!params.formula) throw schema_error("cut needs a formula P");
        const FormulaPtr& p = params.formula;
        return {s.with_goal(wd_formula(p, sig)), s.with_goal(p), s.with_extra_hyp(p)};
    }
    case RuleId::AllHyp: {
        std::size_t i = need_hyp(s, params, "allHyp");
        const FormulaPtr& h = s.hyps()[i];
        if (h->kind() != Formula::Kind::Forall)
            throw schema_error("allHyp: hypothesis is not universally quantified");
        if (!params.term) throw schema_error("allHyp needs an instantiation term E");
        if (!(params.term->type() == h->bound_type()))
            throw schema_error("allHyp: instantiation term has type " + params.term->type().str() +
                               " but the binder expects " + h->bound_type().str());
        Sequent base = s.without_hyp(i);
        FormulaPtr inst =
            apply_subst(Substitution::single(h->bound_var(), params.term), h->body());
        return {base.with_goal(wd_term(params.term, sig)), base.with_extra_hyp(inst)};
    }
    case RuleId::GoalWD:
        return {s.with_extra_hyp(wd_formula(s.goal(), sig))};
    case RuleId::HypWD: {
        std::size_t i = need_hyp(s, params, "hypWD");
        return {s.with_extra_hyp(wd_formula(s.hyps()[i], sig))};
    }
    case RuleId::RewriteHyp:
    case RuleId::RewriteGoal: {
        if (!params.app) throw schema_error("rewrite steps need an application");
        if ((rule == RuleId::RewriteGoal) != params.app->targets_goal())
            throw schema_error("rewrite step target does not match the rule id");
        return rewrite_step(s, *params.app);
    }
    case RuleId::OracleClose:
        throw schema_error("oracle closure is not a schema; check it with check_tree");
    }
    throw schema_error("unknown rule");
}

// ---------------------------------------------------------------------------
// ProofTree
// ---------------------------------------------------------------------------

ProofTreePtr ProofTree::make(Sequent conclusion, RuleId rule, RuleParams params,
                             std::vector<ProofTreePtr> children,
                             std::optional<Bounds> oracle_bounds) {
    auto t = std::make_shared<ProofTree>(ProofTree{std::move(conclusion), rule, std::move(params),
                                                   std::move(children), std::move(oracle_bounds)});
    return t;
}

bool ProofTree::bounded_confidence() const {
    if (rule == RuleId::OracleClose) return true;
    return std::any_of(children.begin(), children.end(),
                       [](const ProofTreePtr& c) { return c->bounded_confidence(); });
}

std::size_t ProofTree::node_count() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c->node_count();
    return n;
}

std::string CheckTreeResult::str() const {
    if (accepted) return "accepted (" + confidence + " confidence)";
    std::string path = "root";
    for (std::size_t i : reject_path) path += "." + std::to_string(i + 1);
    return "rejected at " + path + ": " + reason;
}

namespace {

bool check_node(const ProofTreePtr& t, std::vector<std::size_t>& path, CheckTreeResult& r) {
    if (t->rule == RuleId::OracleClose) {
        if (!t->children.empty()) {
            r.reject_path = path;
            r.reason = "oracle leaves have no premises";
            return false;
        }
        Bounds b = t->oracle_bounds.value_or(Bounds{});
        CheckResult cr = check_sequent(t->conclusion.hyps(), t->conclusion.goal(),
                                       *t->conclusion.sig(), b);
        if (!cr.valid()) {
            r.reject_path = path;
            r.reason = "oracle leaf does not re-check: " + cr.str();
            return false;
        }
        r.confidence = "bounded";
        return true;
    }
    std::vector<Sequent> premises;
    try {
        premises = apply_rule(t->conclusion, t->rule, t->params);
    } catch (const error& e) {
        r.reject_path = path;
        r.reason = e.what();
        return false;
    }
    if (premises.size() != t->children.size()) {
        r.reject_path = path;
        r.reason = rule_name(t->rule) + " expects " + std::to_string(premises.size()) +
                   " premise(s), tree has " + std::to_string(t->children.size());
        return false;
    }
    for (std::size_t i = 0; i < premises.size(); ++i) {
        if (!premises[i].equals(t->children[i]->conclusion)) {
            r.reject_path = path;
            r.reason = "premise " + std::to_string(i + 1) + " should be '" + premises[i].str() +
                       "' but child concludes '" + t->children[i]->conclusion.str() + "'";
            return false;
        }
        path.push_back(i);
        if (!check_node(t->children[i], path, r)) return false;
        path.pop_back();
    }
    return true;
}

} // namespace

CheckTreeResult check_tree(const ProofTreePtr& t) {
    CheckTreeResult r;
    r.confidence = "full";
    std::vector<std::size_t> path;
    r.accepted = check_node(t, path, r);
    if (r.accepted && t->bounded_confidence()) r.confidence = "bounded";
    if (!r.accepted) r.confidence.clear();
    return r;
}

// ---------------------------------------------------------------------------
// auto tactic
// ---------------------------------------------------------------------------

namespace {

bool discharge_rec(const Sequent& s, const Bounds& b, DischargeOutcome& out, ProofTreePtr& tree) {
    // closers first
    for (const auto& h : s.hyps()) {
        if (h->kind() == Formula::Kind::False) {
            tree = ProofTree::make(s, RuleId::BotHyp, {}, {});
            return true;
        }
    }
    for (const auto& h : s.hyps()) {
        if (h->equals(*s.goal())) {
            tree = ProofTree::make(s, RuleId::Hyp, {}, {});
            return true;
        }
    }
    if (s.goal()->kind() == Formula::Kind::Equal &&
        s.goal()->term_args()[0]->equals(*s.goal()->term_args()[1])) {
        tree = ProofTree::make(s, RuleId::EqGoal, {}, {});
        return true;
    }
    if (s.goal()->kind() == Formula::Kind::And) {
        auto premises = apply_rule(s, RuleId::AndGoal, {});
        std::vector<ProofTreePtr> kids;
        for (const auto& p : premises) {
            ProofTreePtr kid;
            if (!discharge_rec(p, b, out, kid)) return false;
            kids.push_back(std::move(kid));
        }
        tree = ProofTree::make(s, RuleId::AndGoal, {}, std::move(kids));
        return true;
    }
    for (std::size_t i = 0; i < s.hyps().size(); ++i) {
        if (s.hyps()[i]->kind() == Formula::Kind::And) {
            RuleParams params;
            params.hyp_index = i;
            auto premises = apply_rule(s, RuleId::AndHyp, params);
            ProofTreePtr kid;
            if (!discharge_rec(premises[0], b, out, kid)) return false;
            tree = ProofTree::make(s, RuleId::AndHyp, params, {std::move(kid)});
            return true;
        }
    }
    // oracle closure
    CheckResult cr = check_sequent(s.hyps(), s.goal(), *s.sig(), b);
    switch (cr.status) {
    case CheckResult::Status::BoundedValid:
        tree = ProofTree::make(s, RuleId::OracleClose, {}, {}, b);
        return true;
    case CheckResult::Status::Counterexample:
        out.cex = cr.cex;
        out.failure_reason = "counterexample: " + cr.cex->str();
        return false;
    case CheckResult::Status::Unknown:
        out.failure_reason = cr.reason;
        return false;
    }
    return false;
}

} // namespace

DischargeOutcome auto_discharge(const Sequent& s, const Bounds& bounds) {
    DischargeOutcome out;
    ProofTreePtr tree;
    if (discharge_rec(s, bounds, out, tree)) out.tree = tree;
    return out;
}

} // namespace wdrew
