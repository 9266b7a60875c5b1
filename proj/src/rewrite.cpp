#include "wdrew/rewrite.hpp"

#include <sstream>

#include "wdrew/printer.hpp"
#include "wdrew/wd.hpp"

namespace wdrew {

void GroupedRule::validate() const {
    if (cases.empty()) throw error("rule " + name + " has no cases");
    auto lvars = free_vars(lhs);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        for (const auto& v : free_vars(c.condition))
            if (!lvars.count(v))
                throw error("rule " + name + " violates clause 2: condition variable '" + v +
                            "' does not occur in the left-hand side");
        for (const auto& v : free_vars(c.rhs))
            if (!lvars.count(v))
                throw error("rule " + name + " violates clause 3: right-hand side variable '" +
                            v + "' does not occur in the left-hand side");
        if (!(c.rhs->type() == lhs->type()))
            throw type_error("rule " + name + " case " + std::to_string(i + 1) +
                             ": right-hand side type " + c.rhs->type().str() +
                             " differs from left-hand side type " + lhs->type().str());
    }
    if (unconditional &&
        (cases.size() != 1 || cases[0].condition->kind() != Formula::Kind::True))
        throw error("rule " + name + " is flagged unconditional but is not a single true-case");
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

namespace {

bool match_rec(const TermPtr& pattern, const TermPtr& subject,
               const std::set<std::string>& metavars, std::map<std::string, TermPtr>& out) {
    switch (pattern->kind()) {
    case Term::Kind::Var: {
        if (metavars.count(pattern->sym())) {
            if (!(pattern->type() == subject->type())) return false;
            auto it = out.find(pattern->sym());
            if (it != out.end()) return it->second->equals(*subject); // non-linear
            out.emplace(pattern->sym(), subject);
            return true;
        }
        return subject->kind() == Term::Kind::Var && subject->sym() == pattern->sym() &&
               subject->type() == pattern->type();
    }
    case Term::Kind::IntLit:
        return subject->kind() == Term::Kind::IntLit && subject->value() == pattern->value();
    case Term::Kind::App: {
        if (subject->kind() != Term::Kind::App || subject->sym() != pattern->sym() ||
            subject->args().size() != pattern->args().size() ||
            !(subject->type() == pattern->type()))
            return false;
        for (std::size_t i = 0; i < pattern->args().size(); ++i)
            if (!match_rec(pattern->args()[i], subject->args()[i], metavars, out)) return false;
        return true;
    }
    }
    return false;
}

} // namespace

std::optional<Substitution> match(const TermPtr& pattern, const TermPtr& subject,
                                  const std::set<std::string>& metavars) {
    std::map<std::string, TermPtr> out;
    if (!match_rec(pattern, subject, metavars, out)) return std::nullopt;
    return Substitution::of(std::move(out));
}

// ---------------------------------------------------------------------------
// Applicability search
// ---------------------------------------------------------------------------

std::string Application::str() const {
    std::ostringstream os;
    os << rule->name << " at " << (targets_goal() ? "goal" : "hyp " + std::to_string(hyp_index + 1))
       << " position " << position_str(pos) << " with " << subst.str();
    return os.str();
}

namespace {

// Binder names crossed on the way to position p.
std::set<std::string> bound_at(const FormulaPtr& f, const Position& p) {
    std::set<std::string> bound;
    Node cur{f};
    for (std::size_t step : p) {
        if (!is_term(cur)) {
            const auto& g = as_formula(cur);
            if (g->kind() == Formula::Kind::Forall || g->kind() == Formula::Kind::Exists)
                bound.insert(g->bound_var());
        }
        cur = child_at(cur, step);
    }
    return bound;
}

// Checks every Application invariant; returns nullopt when the candidate
// match must be excluded.
std::optional<Application> make_application(const GroupedRulePtr& rule, int hyp_index,
                                            const FormulaPtr& target, const Position& pos,
                                            Substitution subst) {
    if (!is_non_conflicting(subst)) return std::nullopt;
    auto bound = bound_at(target, pos);
    for (const auto& v : subst.range_vars())
        if (bound.count(v)) return std::nullopt; // capture under a binder
    // the instantiated conditions and right-hand sides must not capture
    // either, and their free variables must be free in the target
    try {
        for (const auto& c : rule->cases) {
            auto ci = apply_subst(subst, c.condition);
            auto ri = apply_subst(subst, c.rhs);
            for (const auto& v : free_vars(ci))
                if (bound.count(v)) return std::nullopt;
            for (const auto& v : free_vars(ri))
                if (bound.count(v)) return std::nullopt;
        }
    } catch (const capture_error&) {
        return std::nullopt;
    } catch (const type_error&) {
        return std::nullopt;
    }
    Application app;
    app.hyp_index = hyp_index;
    app.pos = pos;
    app.subst = std::move(subst);
    app.rule = rule;
    return app;
}

} // namespace

std::vector<Application> find_applications(const std::vector<GroupedRulePtr>& rules,
                                           const Sequent& s) {
    std::vector<Application> out;
    auto scan = [&](int hyp_index, const FormulaPtr& target) {
        for (const auto& [pos, term] : term_positions(target)) {
            for (const auto& rule : rules) {
                if (rule->lhs_is_variable) continue;
                auto sub = match(rule->lhs, term, rule->metavars());
                if (!sub) continue;
                if (auto app = make_application(rule, hyp_index, target, pos, std::move(*sub)))
                    out.push_back(std::move(*app));
            }
        }
    };
    for (std::size_t i = 0; i < s.hyps().size(); ++i) scan(static_cast<int>(i), s.hyps()[i]);
    scan(-1, s.goal());
    return out;
}

// ---------------------------------------------------------------------------
// Top-level occurrence
// ---------------------------------------------------------------------------

bool is_top_level(const FormulaPtr& f, const Position& p) {
    Node cur{f};
    std::size_t idx = 0;
    while (!is_term(cur)) {
        const auto& g = as_formula(cur);
        if (g->kind() == Formula::Kind::Not) {
            if (idx >= p.size()) return false;
            cur = child_at(cur, p[idx++]);
            continue;
        }
        if (g->kind() == Formula::Kind::Pred || g->kind() == Formula::Kind::Equal) {
            // p must descend into one of the atom's term arguments
            return idx < p.size();
        }
        return false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Rewrite proof step
// ---------------------------------------------------------------------------

std::vector<Sequent> rewrite_step(const Sequent& s, const Application& app) {
    const GroupedRulePtr& rule = app.rule;
    rule->validate();
    if (rule->lhs_is_variable)
        throw proviso_error("rule " + rule->name + " has a variable left-hand side and cannot be applied");

    const bool on_goal = app.targets_goal();
    if (!on_goal && static_cast<std::size_t>(app.hyp_index) >= s.hyps().size())
        throw proviso_error("hypothesis index out of range");
    const FormulaPtr target = on_goal ? s.goal() : s.hyps()[static_cast<std::size_t>(app.hyp_index)];

    // the matched occurrence must really be sigma(l)
    Node at = subterm_at(Node(target), app.pos);
    if (!is_term(at)) throw proviso_error("position does not address a term");
    TermPtr expected = apply_subst(app.subst, rule->lhs);
    if (!as_term(at)->equals(*expected))
        throw proviso_error("occurrence at position " + position_str(app.pos) +
                            " is not an instance of the rule's left-hand side");

    auto bound = bound_at(target, app.pos);
    std::vector<FormulaPtr> conds;
    std::vector<TermPtr> rhss;
    for (const auto& c : rule->cases) {
        FormulaPtr ci = apply_subst(app.subst, c.condition);
        TermPtr ri = apply_subst(app.subst, c.rhs);
        for (const auto& v : free_vars(ci))
            if (bound.count(v))
                throw proviso_error("free variable '" + v +
                                    "' of the instantiated condition is bound in the target");
        for (const auto& v : free_vars(ri))
            if (bound.count(v))
                throw proviso_error("free variable '" + v +
                                    "' of the instantiated replacement is bound in the target");
        conds.push_back(std::move(ci));
        rhss.push_back(std::move(ri));
    }

    auto rewritten = [&](std::size_t i) {
        return as_formula(replace_at(Node(target), app.pos, Node(rhss[i])));
    };

    std::vector<Sequent> premises;

    if (rule->unconditional) {
        if (rule->cases.size() != 1 || rule->cases[0].condition->kind() != Formula::Kind::True)
            throw schema_error("rule " + rule->name + " is not unconditional");
        FormulaPtr nf = rewritten(0);
        if (on_goal) {
            premises.push_back(s.with_goal(nf));
        } else {
            auto hs = s.hyps();
            hs[static_cast<std::size_t>(app.hyp_index)] = nf;
            premises.push_back(s.with_hyps(std::move(hs)));
        }
        return premises;
    }

    FormulaPtr disj = conds[0];
    for (std::size_t i = 1; i < conds.size(); ++i) disj = Formula::or_(disj, conds[i]);
    const Signature& sig = *s.sig();

    bool emit_wd_premise = true;
    if (rule->top_level_conditions_wd && is_top_level(target, app.pos)) emit_wd_premise = false;
    bool emit_disj_premise = !rule->case_complete;

    if (emit_wd_premise) premises.push_back(s.with_goal(wd_formula(disj, sig)));
    if (emit_disj_premise) premises.push_back(s.with_goal(disj));

    for (std::size_t i = 0; i < conds.size(); ++i) {
        if (on_goal) {
            auto hs = s.hyps();
            hs.push_back(conds[i]);
            premises.emplace_back(s.sig(), std::move(hs), rewritten(i));
        } else {
            auto hs = s.hyps();
            auto k = static_cast<std::size_t>(app.hyp_index);
            hs[k] = rewritten(i);
            hs.insert(hs.begin() + static_cast<std::ptrdiff_t>(k), conds[i]);
            premises.emplace_back(s.sig(), std::move(hs), s.goal());
        }
    }
    return premises;
}

} // namespace wdrew
