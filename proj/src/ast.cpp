#include "wdrew/ast.hpp"

#include <algorithm>
#include <sstream>

namespace wdrew {

// ---------------------------------------------------------------------------
// Type
// ---------------------------------------------------------------------------

std::shared_ptr<const Type::Rep> Type::int_rep() {
    static const auto rep = std::make_shared<const Rep>(Rep{Kind::Int, "", nullptr, nullptr});
    return rep;
}

Type Type::integer() { return Type(int_rep()); }

Type Type::boolean() {
    static const auto rep = std::make_shared<const Rep>(Rep{Kind::Bool, "", nullptr, nullptr});
    return Type(rep);
}

Type Type::given(std::string name) {
    return Type(std::make_shared<const Rep>(Rep{Kind::Given, std::move(name), nullptr, nullptr}));
}

Type Type::pow(Type elem) {
    return Type(std::make_shared<const Rep>(Rep{Kind::Pow, "", elem.rep_, nullptr}));
}

Type Type::prod(Type left, Type right) {
    return Type(std::make_shared<const Rep>(Rep{Kind::Prod, "", left.rep_, right.rep_}));
}

bool Type::operator==(const Type& o) const {
    if (rep_ == o.rep_) return true;
    if (rep_->kind != o.rep_->kind) return false;
    switch (rep_->kind) {
    case Kind::Int:
    case Kind::Bool: return true;
    case Kind::Given: return rep_->name == o.rep_->name;
    case Kind::Pow: return Type(rep_->a) == Type(o.rep_->a);
    case Kind::Prod:
        return Type(rep_->a) == Type(o.rep_->a) && Type(rep_->b) == Type(o.rep_->b);
    }
    return false;
}

int Type::pow_depth() const {
    switch (kind()) {
    case Kind::Int:
    case Kind::Bool:
    case Kind::Given: return 0;
    case Kind::Pow: return 1 + elem().pow_depth();
    case Kind::Prod: return std::max(left().pow_depth(), right().pow_depth());
    }
    return 0;
}

std::string Type::str() const {
    switch (kind()) {
    case Kind::Int: return "INT";
    case Kind::Bool: return "BOOL";
    case Kind::Given: return given_name();
    case Kind::Pow: return "POW(" + elem().str() + ")";
    case Kind::Prod: {
        // '**' is left-associative; parenthesize a product on the right.
        std::string l = left().str();
        std::string r = right().str();
        if (right().kind() == Kind::Prod) r = "(" + r + ")";
        return l + " ** " + r;
    }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Term
// ---------------------------------------------------------------------------

TermPtr Term::var(std::string name, Type type) {
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = Kind::Var;
    t->sym_ = std::move(name);
    t->type_ = type;
    return t;
}

TermPtr Term::lit(Int value) {
    if (value < 0) throw error("integer literals are non-negative; wrap with neg");
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = Kind::IntLit;
    t->value_ = std::move(value);
    t->type_ = Type::integer();
    return t;
}

TermPtr Term::app(std::string sym, std::vector<TermPtr> args, Type result) {
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = Kind::App;
    t->sym_ = std::move(sym);
    t->args_ = std::move(args);
    t->type_ = result;
    return t;
}

bool Term::equals(const Term& o) const {
    if (this == &o) return true;
    if (kind_ != o.kind_) return false;
    switch (kind_) {
    case Kind::Var: return sym_ == o.sym_ && type_ == o.type_;
    case Kind::IntLit: return value_ == o.value_;
    case Kind::App: {
        if (sym_ != o.sym_ || args_.size() != o.args_.size()) return false;
        if (!(type_ == o.type_)) return false; // distinguishes e.g. {} : POW(INT) from {} : POW(S)
        for (std::size_t i = 0; i < args_.size(); ++i)
            if (!args_[i]->equals(*o.args_[i])) return false;
        return true;
    }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Formula
// ---------------------------------------------------------------------------

FormulaPtr Formula::false_() {
    static const FormulaPtr f = std::shared_ptr<Formula>(new Formula());
    return f;
}

FormulaPtr Formula::true_() {
    static const FormulaPtr f = [] {
        auto p = std::shared_ptr<Formula>(new Formula());
        p->kind_ = Kind::True;
        return p;
    }();
    return f;
}

FormulaPtr Formula::pred(std::string name, std::vector<TermPtr> args) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = Kind::Pred;
    f->name_ = std::move(name);
    f->targs_ = std::move(args);
    return f;
}

FormulaPtr Formula::equal(TermPtr l, TermPtr r) {
    if (!(l->type() == r->type()))
        throw type_error("equality between different types: " + l->type().str() + " vs " +
                         r->type().str());
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = Kind::Equal;
    f->targs_ = {std::move(l), std::move(r)};
    return f;
}

FormulaPtr Formula::not_(FormulaPtr f) {
    auto g = std::shared_ptr<Formula>(new Formula());
    g->kind_ = Kind::Not;
    g->l_ = std::move(f);
    return g;
}

FormulaPtr Formula::and_(FormulaPtr l, FormulaPtr r) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = Kind::And;
    f->l_ = std::move(l);
    f->r_ = std::move(r);
    return f;
}

FormulaPtr Formula::or_(FormulaPtr l, FormulaPtr r) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = Kind::Or;
    f->l_ = std::move(l);
    f->r_ = std::move(r);
    return f;
}

FormulaPtr Formula::imp(FormulaPtr l, FormulaPtr r) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = Kind::Imp;
    f->l_ = std::move(l);
    f->r_ = std::move(r);
    return f;
}

FormulaPtr Formula::iff(FormulaPtr l, FormulaPtr r) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = Kind::Iff;
    f->l_ = std::move(l);
    f->r_ = std::move(r);
    return f;
}

FormulaPtr Formula::forall(std::string var, Type t, FormulaPtr body) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = Kind::Forall;
    f->name_ = std::move(var);
    f->btype_ = t;
    f->l_ = std::move(body);
    return f;
}

FormulaPtr Formula::exists(std::string var, Type t, FormulaPtr body) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = Kind::Exists;
    f->name_ = std::move(var);
    f->btype_ = t;
    f->l_ = std::move(body);
    return f;
}

bool Formula::equals(const Formula& o) const {
    if (this == &o) return true;
    if (kind_ != o.kind_) return false;
    switch (kind_) {
    case Kind::False:
    case Kind::True: return true;
    case Kind::Pred:
    case Kind::Equal: {
        if (name_ != o.name_ || targs_.size() != o.targs_.size()) return false;
        for (std::size_t i = 0; i < targs_.size(); ++i)
            if (!targs_[i]->equals(*o.targs_[i])) return false;
        return true;
    }
    case Kind::Not: return l_->equals(*o.l_);
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Iff: return l_->equals(*o.l_) && r_->equals(*o.r_);
    case Kind::Forall:
    case Kind::Exists:
        return name_ == o.name_ && btype_ == o.btype_ && l_->equals(*o.l_);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Positions
// ---------------------------------------------------------------------------

std::string position_str(const Position& p) {
    if (p.empty()) return "e";
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << '.';
        os << p[i];
    }
    return os.str();
}

Position parse_position(const std::string& s) {
    if (s == "e" || s.empty()) return {};
    Position p;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i;
        while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw error("bad position: " + s);
        p.push_back(static_cast<std::size_t>(std::stoull(s.substr(i, j - i))));
        if (p.back() == 0) throw error("bad position (children are numbered from 1): " + s);
        i = j;
        if (i < s.size()) {
            if (s[i] != '.') throw error("bad position: " + s);
            ++i;
        }
    }
    return p;
}

bool equal_nodes(const Node& a, const Node& b) {
    if (is_term(a) != is_term(b)) return false;
    if (is_term(a)) return as_term(a)->equals(*as_term(b));
    return as_formula(a)->equals(*as_formula(b));
}

std::size_t child_count(const Node& n) {
    if (is_term(n)) {
        const auto& t = as_term(n);
        return t->kind() == Term::Kind::App ? t->args().size() : 0;
    }
    const auto& f = as_formula(n);
    switch (f->kind()) {
    case Formula::Kind::False:
    case Formula::Kind::True: return 0;
    case Formula::Kind::Pred:
    case Formula::Kind::Equal: return f->term_args().size();
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return 1;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Iff: return 2;
    }
    return 0;
}

Node child_at(const Node& n, std::size_t i) {
    if (i == 0 || i > child_count(n)) throw position_error("no child " + std::to_string(i));
    if (is_term(n)) return Node(as_term(n)->args()[i - 1]);
    const auto& f = as_formula(n);
    switch (f->kind()) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal: return Node(f->term_args()[i - 1]);
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return Node(f->lhs());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Iff: return i == 1 ? Node(f->lhs()) : Node(f->rhs());
    default: throw position_error("no children");
    }
}

Node subterm_at(const Node& n, const Position& p) {
    Node cur = n;
    for (std::size_t step : p) {
        if (step == 0 || step > child_count(cur))
            throw position_error("invalid position " + position_str(p));
        cur = child_at(cur, step);
    }
    return cur;
}

static Node rebuild(const Node& n, std::size_t idx, const Node& new_child) {
    if (is_term(n)) {
        const auto& t = as_term(n);
        if (!is_term(new_child)) throw type_error("cannot place a formula inside a term");
        auto args = t->args();
        args[idx - 1] = as_term(new_child);
        return Node(Term::app(t->sym(), std::move(args), t->type()));
    }
    const auto& f = as_formula(n);
    switch (f->kind()) {
    case Formula::Kind::Pred:
    case Formula::Kind::Equal: {
        if (!is_term(new_child)) throw type_error("cannot place a formula in a term position");
        auto args = f->term_args();
        args[idx - 1] = as_term(new_child);
        if (f->kind() == Formula::Kind::Pred) return Node(Formula::pred(f->pred_name(), std::move(args)));
        return Node(Formula::equal(args[0], args[1]));
    }
    case Formula::Kind::Not:
        return Node(Formula::not_(as_formula(new_child)));
    case Formula::Kind::Forall:
        return Node(Formula::forall(f->bound_var(), f->bound_type(), as_formula(new_child)));
    case Formula::Kind::Exists:
        return Node(Formula::exists(f->bound_var(), f->bound_type(), as_formula(new_child)));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Iff: {
        FormulaPtr l = idx == 1 ? as_formula(new_child) : f->lhs();
        FormulaPtr r = idx == 2 ? as_formula(new_child) : f->rhs();
        switch (f->kind()) {
        case Formula::Kind::And: return Node(Formula::and_(l, r));
        case Formula::Kind::Or: return Node(Formula::or_(l, r));
        case Formula::Kind::Imp: return Node(Formula::imp(l, r));
        default: return Node(Formula::iff(l, r));
        }
    }
    default: throw position_error("node has no children");
    }
}

Node replace_at(const Node& n, const Position& p, const Node& replacement) {
    if (p.empty()) {
        Node old = n;
        if (is_term(old) != is_term(replacement))
            throw type_error("replacement changes syntactic category");
        if (is_term(old) && !(as_term(old)->type() == as_term(replacement)->type()))
            throw type_error("replacement changes type: " + as_term(old)->type().str() + " vs " +
                             as_term(replacement)->type().str());
        return replacement;
    }
    std::size_t step = p.front();
    if (step == 0 || step > child_count(n)) throw position_error("invalid position " + position_str(p));
    Position rest(p.begin() + 1, p.end());
    Node sub = replace_at(child_at(n, step), rest, replacement);
    return rebuild(n, step, sub);
}

static void collect_term_positions(const Node& n, Position& here,
                                   std::vector<std::pair<Position, TermPtr>>& out) {
    if (is_term(n)) out.emplace_back(here, as_term(n));
    std::size_t c = child_count(n);
    for (std::size_t i = 1; i <= c; ++i) {
        here.push_back(i);
        collect_term_positions(child_at(n, i), here, out);
        here.pop_back();
    }
}

std::vector<std::pair<Position, TermPtr>> term_positions(const FormulaPtr& f) {
    std::vector<std::pair<Position, TermPtr>> out;
    Position here;
    collect_term_positions(Node(f), here, out);
    return out;
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

static void collect_free(const Node& n, std::set<std::string>& bound,
                         std::vector<std::pair<std::string, Type>>& out,
                         std::set<std::string>& seen) {
    if (is_term(n)) {
        const auto& t = as_term(n);
        if (t->kind() == Term::Kind::Var) {
            if (!bound.count(t->sym()) && !seen.count(t->sym())) {
                seen.insert(t->sym());
                out.emplace_back(t->sym(), t->type());
            }
            return;
        }
        for (const auto& a : t->args()) collect_free(Node(a), bound, out, seen);
        return;
    }
    const auto& f = as_formula(n);
    switch (f->kind()) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
        bool was_bound = bound.count(f->bound_var()) > 0;
        bound.insert(f->bound_var());
        collect_free(Node(f->body()), bound, out, seen);
        if (!was_bound) bound.erase(f->bound_var());
        return;
    }
    default: {
        std::size_t c = child_count(n);
        for (std::size_t i = 1; i <= c; ++i) collect_free(child_at(n, i), bound, out, seen);
        return;
    }
    }
}

std::vector<std::pair<std::string, Type>> free_vars_ordered(const Node& n) {
    std::vector<std::pair<std::string, Type>> out;
    std::set<std::string> bound, seen;
    collect_free(n, bound, out, seen);
    return out;
}

std::set<std::string> free_vars(const FormulaPtr& f) {
    std::set<std::string> s;
    for (auto& [name, ty] : free_vars_ordered(Node(f))) s.insert(name);
    return s;
}

std::set<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> s;
    for (auto& [name, ty] : free_vars_ordered(Node(t))) s.insert(name);
    return s;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

Substitution Substitution::of(std::map<std::string, TermPtr> m) {
    Substitution s;
    for (auto& [name, t] : m) {
        if (t->kind() == Term::Kind::Var && t->sym() == name) continue; // identity
        s.map_.emplace(name, t);
    }
    return s;
}

Substitution Substitution::single(const std::string& var, TermPtr t) {
    return of({{var, std::move(t)}});
}

std::set<std::string> Substitution::dom() const {
    std::set<std::string> s;
    for (auto& [name, t] : map_) s.insert(name);
    return s;
}

std::vector<TermPtr> Substitution::ran() const {
    std::vector<TermPtr> v;
    for (auto& [name, t] : map_) v.push_back(t);
    return v;
}

std::set<std::string> Substitution::range_vars() const {
    std::set<std::string> s;
    for (auto& [name, t] : map_)
        for (auto& v : free_vars(t)) s.insert(v);
    return s;
}

bool is_non_conflicting(const Substitution& s) {
    auto ran_vars = s.range_vars();
    for (auto& d : s.dom())
        if (ran_vars.count(d)) return false;
    return true;
}

static TermPtr subst_term(const Substitution& s, const TermPtr& t,
                          const std::set<std::string>& shadowed) {
    switch (t->kind()) {
    case Term::Kind::Var: {
        if (shadowed.count(t->sym())) return t;
        auto it = s.mapping().find(t->sym());
        if (it == s.mapping().end()) return t;
        if (!(it->second->type() == t->type()))
            throw type_error("substitution binds " + t->sym() + " : " + t->type().str() +
                             " to a term of type " + it->second->type().str());
        return it->second;
    }
    case Term::Kind::IntLit: return t;
    case Term::Kind::App: {
        std::vector<TermPtr> args;
        args.reserve(t->args().size());
        bool changed = false;
        for (const auto& a : t->args()) {
            auto na = subst_term(s, a, shadowed);
            changed = changed || na != a;
            args.push_back(std::move(na));
        }
        if (!changed) return t;
        return Term::app(t->sym(), std::move(args), t->type());
    }
    }
    return t;
}

static FormulaPtr subst_formula(const Substitution& s, const FormulaPtr& f,
                                std::set<std::string>& shadowed,
                                const std::set<std::string>& ran_vars) {
    switch (f->kind()) {
    case Formula::Kind::False:
    case Formula::Kind::True: return f;
    case Formula::Kind::Pred:
    case Formula::Kind::Equal: {
        std::vector<TermPtr> args;
        bool changed = false;
        for (const auto& a : f->term_args()) {
            auto na = subst_term(s, a, shadowed);
            changed = changed || na != a;
            args.push_back(std::move(na));
        }
        if (!changed) return f;
        if (f->kind() == Formula::Kind::Pred) return Formula::pred(f->pred_name(), std::move(args));
        return Formula::equal(args[0], args[1]);
    }
    case Formula::Kind::Not: {
        auto b = subst_formula(s, f->lhs(), shadowed, ran_vars);
        return b == f->lhs() ? f : Formula::not_(b);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Iff: {
        auto l = subst_formula(s, f->lhs(), shadowed, ran_vars);
        auto r = subst_formula(s, f->rhs(), shadowed, ran_vars);
        if (l == f->lhs() && r == f->rhs()) return f;
        switch (f->kind()) {
        case Formula::Kind::And: return Formula::and_(l, r);
        case Formula::Kind::Or: return Formula::or_(l, r);
        case Formula::Kind::Imp: return Formula::imp(l, r);
        default: return Formula::iff(l, r);
        }
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
        const std::string& x = f->bound_var();
        if (s.mapping().count(x))
            throw capture_error("substitution domain contains bound variable " + x);
        if (ran_vars.count(x))
            throw capture_error("substituting under binder " + x +
                                " would capture a free variable of the replacement");
        bool was = shadowed.count(x) > 0;
        shadowed.insert(x);
        auto b = subst_formula(s, f->body(), shadowed, ran_vars);
        if (!was) shadowed.erase(x);
        if (b == f->body()) return f;
        return f->kind() == Formula::Kind::Forall ? Formula::forall(x, f->bound_type(), b)
                                                  : Formula::exists(x, f->bound_type(), b);
    }
    }
    return f;
}

TermPtr apply_subst(const Substitution& s, const TermPtr& t) {
    if (s.empty()) return t;
    return subst_term(s, t, {});
}

FormulaPtr apply_subst(const Substitution& s, const FormulaPtr& f) {
    if (s.empty()) return f;
    std::set<std::string> shadowed;
    return subst_formula(s, f, shadowed, s.range_vars());
}

} // namespace wdrew
