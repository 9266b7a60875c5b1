#include "wdrew/wd.hpp"

namespace wdrew {

namespace {
bool is_true(const FormulaPtr& f) { return f->kind() == Formula::Kind::True; }
} // namespace

FormulaPtr wd_and(FormulaPtr a, FormulaPtr b) {
    if (is_true(a)) return b;
    if (is_true(b)) return a;
    return Formula::and_(std::move(a), std::move(b));
}

FormulaPtr wd_or(FormulaPtr a, FormulaPtr b) {
    if (is_true(a) || is_true(b)) return Formula::true_();
    return Formula::or_(std::move(a), std::move(b));
}

FormulaPtr wd_forall(const std::string& var, const Type& t, FormulaPtr body) {
    if (is_true(body)) return Formula::true_();
    return Formula::forall(var, t, std::move(body));
}

FormulaPtr wd_condition_for(const std::string& sym, const std::vector<TermPtr>& args,
                            const Signature& sig) {
    if (sym == "div")
        return Formula::not_(Formula::equal(args[1], Term::lit(0)));
    if (sym == "card")
        return Formula::pred("finite", {args[0]});
    if (sym == "apply") {
        // x in dom(f) & functional(f); functional is global functionality.
        const Type& ft = args[0]->type();
        Type dom_type = Type::pow(ft.elem().left());
        TermPtr d = Term::app("dom", {args[0]}, dom_type);
        return Formula::and_(Formula::pred("mem", {args[1], d}),
                             Formula::pred("functional", {args[0]}));
    }
    if (builtin_function(sym)) return Formula::true_();
    if (const UserFunc* uf = sig.user_function(sym)) {
        if (!uf->wd_condition) return Formula::true_();
        std::map<std::string, TermPtr> m;
        for (std::size_t i = 0; i < uf->params.size(); ++i)
            m.emplace(uf->params[i].first, args[i]);
        return apply_subst(Substitution::of(std::move(m)), uf->wd_condition);
    }
    throw error("unknown function symbol '" + sym + "' (no registry entry)");
}

FormulaPtr wd_term(const TermPtr& t, const Signature& sig) {
    switch (t->kind()) {
    case Term::Kind::Var:
    case Term::Kind::IntLit: return Formula::true_();
    case Term::Kind::App: {
        FormulaPtr acc = Formula::true_();
        for (const auto& a : t->args()) acc = wd_and(acc, wd_term(a, sig));
        return wd_and(acc, wd_condition_for(t->sym(), t->args(), sig));
    }
    }
    return Formula::true_();
}

FormulaPtr wd_formula(const FormulaPtr& f, const Signature& sig) {
    switch (f->kind()) {
    case Formula::Kind::False:
    case Formula::Kind::True: return Formula::true_();
    case Formula::Kind::Pred:
    case Formula::Kind::Equal: {
        FormulaPtr acc = Formula::true_();
        for (const auto& a : f->term_args()) acc = wd_and(acc, wd_term(a, sig));
        return acc;
    }
    case Formula::Kind::Not: return wd_formula(f->lhs(), sig);
    case Formula::Kind::And: {
        FormulaPtr dl = wd_formula(f->lhs(), sig);
        FormulaPtr dr = wd_formula(f->rhs(), sig);
        return wd_or(wd_or(wd_and(dl, dr), wd_and(dl, Formula::not_(f->lhs()))),
                     wd_and(dr, Formula::not_(f->rhs())));
    }
    case Formula::Kind::Or: {
        // expansion of not(not p & not q), double negations collapsed
        FormulaPtr dl = wd_formula(f->lhs(), sig);
        FormulaPtr dr = wd_formula(f->rhs(), sig);
        return wd_or(wd_or(wd_and(dl, dr), wd_and(dl, f->lhs())), wd_and(dr, f->rhs()));
    }
    case Formula::Kind::Imp: {
        // expansion of not(p & not q)
        FormulaPtr dl = wd_formula(f->lhs(), sig);
        FormulaPtr dr = wd_formula(f->rhs(), sig);
        return wd_or(wd_or(wd_and(dl, dr), wd_and(dl, Formula::not_(f->lhs()))),
                     wd_and(dr, f->rhs()));
    }
    case Formula::Kind::Iff:
        return wd_formula(
            Formula::and_(Formula::imp(f->lhs(), f->rhs()), Formula::imp(f->rhs(), f->lhs())),
            sig);
    case Formula::Kind::Forall: {
        FormulaPtr db = wd_formula(f->body(), sig);
        return wd_or(wd_forall(f->bound_var(), f->bound_type(), db),
                     Formula::exists(f->bound_var(), f->bound_type(),
                                     wd_and(db, Formula::not_(f->body()))));
    }
    case Formula::Kind::Exists: {
        // expansion of not(!x. not p), double negations collapsed
        FormulaPtr db = wd_formula(f->body(), sig);
        return wd_or(wd_forall(f->bound_var(), f->bound_type(), db),
                     Formula::exists(f->bound_var(), f->bound_type(), wd_and(db, f->body())));
    }
    }
    return Formula::true_();
}

FormulaPtr wd_sequent(const std::vector<FormulaPtr>& hyps, const FormulaPtr& goal,
                      const Signature& sig) {
    FormulaPtr body = goal;
    if (!hyps.empty()) {
        FormulaPtr h = hyps[0];
        for (std::size_t i = 1; i < hyps.size(); ++i) h = Formula::and_(h, hyps[i]);
        body = Formula::imp(h, goal);
    }
    auto frees = free_vars_ordered(Node(body));
    for (auto it = frees.rbegin(); it != frees.rend(); ++it)
        body = Formula::forall(it->first, it->second, body);
    return wd_formula(body, sig);
}

bool total_symbols_only(const Node& n, const Signature& sig) {
    if (is_term(n)) {
        const TermPtr& t = as_term(n);
        if (t->kind() == Term::Kind::App) {
            if (const BuiltinFunc* bf = builtin_function(t->sym())) {
                if (!bf->total) return false;
            } else if (const UserFunc* uf = sig.user_function(t->sym())) {
                if (uf->wd_condition) return false;
            } else {
                return false;
            }
        }
    }
    std::size_t c = child_count(n);
    for (std::size_t i = 1; i <= c; ++i)
        if (!total_symbols_only(child_at(n, i), sig)) return false;
    return true;
}

} // namespace wdrew
