#include "wdrew/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "wdrew/printer.hpp"
#include "wdrew/wd.hpp"

namespace wdrew {

// ---------------------------------------------------------------------------
// Value
// ---------------------------------------------------------------------------

Value Value::integer(Int v) {
    Value x;
    x.kind_ = Kind::Int;
    x.i_ = std::move(v);
    return x;
}

Value Value::given(std::string set, int index) {
    Value x;
    x.kind_ = Kind::Given;
    x.gname_ = std::move(set);
    x.gidx_ = index;
    return x;
}

Value Value::pair(Value a, Value b) {
    Value x;
    x.kind_ = Kind::Pair;
    x.elems_ = {std::move(a), std::move(b)};
    return x;
}

Value Value::set(std::vector<Value> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end(),
                            [](const Value& a, const Value& b) { return a == b; }),
                elems.end());
    Value x;
    x.kind_ = Kind::Set;
    x.elems_ = std::move(elems);
    return x;
}

int Value::cmp(const Value& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
    switch (kind_) {
    case Kind::Int: return i_ == o.i_ ? 0 : (i_ < o.i_ ? -1 : 1);
    case Kind::Given:
        if (gname_ != o.gname_) return gname_ < o.gname_ ? -1 : 1;
        return gidx_ == o.gidx_ ? 0 : (gidx_ < o.gidx_ ? -1 : 1);
    case Kind::Pair:
    case Kind::Set: {
        std::size_t n = std::min(elems_.size(), o.elems_.size());
        for (std::size_t i = 0; i < n; ++i) {
            int c = elems_[i].cmp(o.elems_[i]);
            if (c != 0) return c;
        }
        if (elems_.size() != o.elems_.size()) return elems_.size() < o.elems_.size() ? -1 : 1;
        return 0;
    }
    }
    return 0;
}

std::string Value::str() const {
    switch (kind_) {
    case Kind::Int: return i_.str();
    case Kind::Given: return gname_ + "@" + std::to_string(gidx_);
    case Kind::Pair: return first().str() + " |-> " + second().str();
    case Kind::Set: {
        std::string s = "{";
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) s += ", ";
            s += elems_[i].str();
        }
        return s + "}";
    }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Bounds / Interpretation / CheckResult
// ---------------------------------------------------------------------------

std::string Bounds::str() const {
    std::ostringstream os;
    os << "int [" << int_lo << "," << int_hi << "], given-size " << given_size << ", nesting "
       << max_nesting << ", budget " << budget;
    return os.str();
}

std::string tribool_str(TriBool t) {
    switch (t) {
    case TriBool::True: return "T";
    case TriBool::False: return "F";
    case TriBool::Undef: return "undef";
    }
    return "?";
}

const Value* Interpretation::lookup(const std::string& name) const {
    for (const auto& [n, v] : assignment)
        if (n == name) return &v;
    return nullptr;
}

std::string Interpretation::str() const {
    if (assignment.empty()) return "(empty model)";
    std::string s;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (i) s += ", ";
        s += assignment[i].first + " = " + assignment[i].second.str();
    }
    return s;
}

std::string CheckResult::str() const {
    switch (status) {
    case Status::BoundedValid: return "bounded-valid (" + models_checked.str() + " models)";
    case Status::Counterexample: return "counterexample: " + cex->str();
    case Status::Unknown: return "unknown: " + reason;
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

Int domain_size(const Type& t, const Bounds& b) {
    if (t.pow_depth() > b.max_nesting)
        throw error("type " + t.str() + " exceeds the POW nesting bound (" +
                    std::to_string(b.max_nesting) + ")");
    switch (t.kind()) {
    case Type::Kind::Int:
        return b.int_hi < b.int_lo ? Int(0) : Int(b.int_hi) - b.int_lo + 1;
    case Type::Kind::Bool: throw error("BOOL has no value domain");
    case Type::Kind::Given: return Int(b.given_size);
    case Type::Kind::Prod: return domain_size(t.left(), b) * domain_size(t.right(), b);
    case Type::Kind::Pow: {
        Int n = domain_size(t.elem(), b);
        // 2^n; may be astronomically large, which the budget check rejects
        // before any enumeration is attempted.
        if (n > 100000) throw error("base domain of " + t.str() + " is too large to enumerate");
        Int one = 1;
        return one << static_cast<unsigned>(n);
    }
    }
    return 0;
}

Value value_at(const Type& t, const Int& index, const Bounds& b) {
    switch (t.kind()) {
    case Type::Kind::Int: return Value::integer(Int(b.int_lo) + index);
    case Type::Kind::Bool: throw error("BOOL has no value domain");
    case Type::Kind::Given:
        return Value::given(t.given_name(), static_cast<int>(index) + 1);
    case Type::Kind::Prod: {
        Int rn = domain_size(t.right(), b);
        return Value::pair(value_at(t.left(), index / rn, b), value_at(t.right(), index % rn, b));
    }
    case Type::Kind::Pow: {
        std::vector<Value> elems;
        Int mask = index;
        Int j = 0;
        while (mask != 0) {
            if (boost::multiprecision::bit_test(mask, 0)) elems.push_back(value_at(t.elem(), j, b));
            mask >>= 1;
            ++j;
        }
        return Value::set(std::move(elems));
    }
    }
    throw error("unreachable");
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

Evaluator::Evaluator(const Signature& sig, const Bounds& b) : sig_(sig), bounds_(b) {}

void Evaluator::tick() {
    if (++work_ > bounds_.budget) throw budget_exhausted{};
}

static bool set_functional(const Value& s) {
    // pairs sort by first component, so duplicates in the domain are adjacent
    for (std::size_t i = 1; i < s.elems().size(); ++i) {
        if (s.elems()[i - 1].first() == s.elems()[i].first() &&
            s.elems()[i - 1].second() != s.elems()[i].second())
            return false;
    }
    return true;
}

std::optional<Value> Evaluator::eval_term(const TermPtr& t, const Env& env) {
    tick();
    switch (t->kind()) {
    case Term::Kind::Var: {
        auto it = env.find(t->sym());
        if (it == env.end()) throw error("unbound variable '" + t->sym() + "' in evaluation");
        return it->second;
    }
    case Term::Kind::IntLit: return Value::integer(t->value());
    case Term::Kind::App: break;
    }
    const std::string& sym = t->sym();
    if (sig_.user_function(sym)) throw uninterpreted_error(sym);

    std::vector<Value> args;
    args.reserve(t->args().size());
    for (const auto& a : t->args()) {
        auto v = eval_term(a, env);
        if (!v) return std::nullopt; // strictness
        args.push_back(std::move(*v));
    }

    if (sym == "add") return Value::integer(args[0].int_value() + args[1].int_value());
    if (sym == "sub") return Value::integer(args[0].int_value() - args[1].int_value());
    if (sym == "mul") return Value::integer(args[0].int_value() * args[1].int_value());
    if (sym == "neg") return Value::integer(-args[0].int_value());
    if (sym == "div") {
        if (args[1].int_value() == 0) return std::nullopt;
        return Value::integer(args[0].int_value() / args[1].int_value()); // truncating
    }
    if (sym == "range") {
        std::vector<Value> elems;
        for (Int v = args[0].int_value(); v <= args[1].int_value(); ++v) {
            tick();
            elems.push_back(Value::integer(v));
        }
        return Value::set(std::move(elems));
    }
    if (sym == "card") return Value::integer(Int(args[0].elems().size()));
    if (sym == "empty" || sym == "enum") return Value::set(std::move(args));
    if (sym == "union") {
        auto elems = args[0].elems();
        for (const auto& e : args[1].elems()) elems.push_back(e);
        return Value::set(std::move(elems));
    }
    if (sym == "inter") {
        std::vector<Value> elems;
        for (const auto& e : args[0].elems())
            if (std::find(args[1].elems().begin(), args[1].elems().end(), e) !=
                args[1].elems().end())
                elems.push_back(e);
        return Value::set(std::move(elems));
    }
    if (sym == "diff") {
        std::vector<Value> elems;
        for (const auto& e : args[0].elems())
            if (std::find(args[1].elems().begin(), args[1].elems().end(), e) ==
                args[1].elems().end())
                elems.push_back(e);
        return Value::set(std::move(elems));
    }
    if (sym == "maplet") return Value::pair(std::move(args[0]), std::move(args[1]));
    if (sym == "dom") {
        std::vector<Value> elems;
        for (const auto& e : args[0].elems()) elems.push_back(e.first());
        return Value::set(std::move(elems));
    }
    if (sym == "ran") {
        std::vector<Value> elems;
        for (const auto& e : args[0].elems()) elems.push_back(e.second());
        return Value::set(std::move(elems));
    }
    if (sym == "ovl") {
        std::vector<Value> elems;
        for (const auto& e : args[0].elems()) {
            bool overridden = false;
            for (const auto& g : args[1].elems())
                if (g.first() == e.first()) { overridden = true; break; }
            if (!overridden) elems.push_back(e);
        }
        for (const auto& g : args[1].elems()) elems.push_back(g);
        return Value::set(std::move(elems));
    }
    if (sym == "apply") {
        if (!set_functional(args[0])) return std::nullopt;
        for (const auto& e : args[0].elems())
            if (e.first() == args[1]) return e.second();
        return std::nullopt; // outside the domain
    }
    throw error("no evaluation rule for symbol '" + sym + "'");
}

TriBool Evaluator::eval3(const FormulaPtr& f, const Env& env) {
    tick();
    switch (f->kind()) {
    case Formula::Kind::False: return TriBool::False;
    case Formula::Kind::True: return TriBool::True;
    case Formula::Kind::Equal: {
        auto a = eval_term(f->term_args()[0], env);
        if (!a) return TriBool::Undef;
        auto b = eval_term(f->term_args()[1], env);
        if (!b) return TriBool::Undef;
        return *a == *b ? TriBool::True : TriBool::False;
    }
    case Formula::Kind::Pred: {
        std::vector<Value> args;
        for (const auto& t : f->term_args()) {
            auto v = eval_term(t, env);
            if (!v) return TriBool::Undef;
            args.push_back(std::move(*v));
        }
        const std::string& p = f->pred_name();
        bool r;
        if (p == "le") r = args[0].int_value() <= args[1].int_value();
        else if (p == "lt") r = args[0].int_value() < args[1].int_value();
        else if (p == "ge") r = args[0].int_value() >= args[1].int_value();
        else if (p == "gt") r = args[0].int_value() > args[1].int_value();
        else if (p == "mem")
            r = std::find(args[1].elems().begin(), args[1].elems().end(), args[0]) !=
                args[1].elems().end();
        else if (p == "finite") r = true; // every bounded set is finite
        else if (p == "functional") r = set_functional(args[0]);
        else throw error("no evaluation rule for predicate '" + p + "'");
        return r ? TriBool::True : TriBool::False;
    }
    case Formula::Kind::Not: {
        TriBool v = eval3(f->lhs(), env);
        if (v == TriBool::Undef) return v;
        return v == TriBool::True ? TriBool::False : TriBool::True;
    }
    case Formula::Kind::And: {
        TriBool a = eval3(f->lhs(), env);
        if (a == TriBool::False) return TriBool::False;
        TriBool b = eval3(f->rhs(), env);
        if (b == TriBool::False) return TriBool::False;
        if (a == TriBool::Undef || b == TriBool::Undef) return TriBool::Undef;
        return TriBool::True;
    }
    case Formula::Kind::Or: {
        TriBool a = eval3(f->lhs(), env);
        if (a == TriBool::True) return TriBool::True;
        TriBool b = eval3(f->rhs(), env);
        if (b == TriBool::True) return TriBool::True;
        if (a == TriBool::Undef || b == TriBool::Undef) return TriBool::Undef;
        return TriBool::False;
    }
    case Formula::Kind::Imp: {
        TriBool a = eval3(f->lhs(), env);
        if (a == TriBool::False) return TriBool::True;
        TriBool b = eval3(f->rhs(), env);
        if (b == TriBool::True) return TriBool::True;
        if (a == TriBool::Undef || b == TriBool::Undef) return TriBool::Undef;
        return TriBool::False;
    }
    case Formula::Kind::Iff: {
        TriBool a = eval3(f->lhs(), env);
        if (a == TriBool::Undef) return TriBool::Undef;
        TriBool b = eval3(f->rhs(), env);
        if (b == TriBool::Undef) return TriBool::Undef;
        return a == b ? TriBool::True : TriBool::False;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
        bool is_forall = f->kind() == Formula::Kind::Forall;
        Int n = domain_size(f->bound_type(), bounds_);
        bool saw_undef = false;
        Env inner = env;
        for (Int i = 0; i < n; ++i) {
            tick();
            inner[f->bound_var()] = value_at(f->bound_type(), i, bounds_);
            TriBool v = eval3(f->body(), inner);
            if (is_forall && v == TriBool::False) return TriBool::False;
            if (!is_forall && v == TriBool::True) return TriBool::True;
            if (v == TriBool::Undef) saw_undef = true;
        }
        if (saw_undef) return TriBool::Undef;
        return is_forall ? TriBool::True : TriBool::False;
    }
    }
    return TriBool::Undef;
}

bool Evaluator::eval2(const FormulaPtr& f, const Env& env) {
    TriBool v = eval3(f, env);
    if (v == TriBool::Undef)
        throw error("eval2 applied to a formula that is undefined in this model: " +
                    print_formula(f));
    return v == TriBool::True;
}

// ---------------------------------------------------------------------------
// check_sequent
// ---------------------------------------------------------------------------

namespace {

struct Check {
    FormulaPtr formula;
    bool must_hold;  // hypothesis-style checks prune; the goal check refutes
    bool is_goal;
    bool two_valued; // D-image: evaluate with eval2
    int level;       // deepest enumerated variable the formula mentions
    std::size_t seq; // stable order
};

} // namespace

CheckResult check_sequent(const std::vector<FormulaPtr>& hyps, const FormulaPtr& goal,
                          const Signature& sig, const Bounds& bounds) {
    CheckResult result;
    try {
        // free variables of the sequent, in declaration order
        std::map<std::string, Type> free;
        std::vector<std::pair<std::string, Type>> order_fallback;
        auto add_frees = [&](const FormulaPtr& f) {
            for (auto& [n, t] : free_vars_ordered(Node(f)))
                if (!free.count(n)) {
                    free.emplace(n, t);
                    order_fallback.emplace_back(n, t);
                }
        };
        for (const auto& h : hyps) add_frees(h);
        add_frees(goal);

        std::vector<std::pair<std::string, Type>> vars;
        for (const auto& [n, t] : sig.variables())
            if (free.count(n)) vars.emplace_back(n, t);
        for (const auto& [n, t] : order_fallback)
            if (std::find_if(vars.begin(), vars.end(), [&](auto& p) { return p.first == n; }) ==
                vars.end())
                vars.emplace_back(n, t);

        std::vector<Int> sizes;
        for (const auto& [n, t] : vars) {
            Int s = domain_size(t, bounds);
            if (s > Int(bounds.budget)) {
                result.status = CheckResult::Status::Unknown;
                result.reason = "domain of " + n + " : " + t.str() + " has " + s.str() +
                                " values, beyond the budget";
                return result;
            }
            sizes.push_back(s);
        }

        // one D-check and one truth check per hypothesis, then the goal pair
        std::vector<Check> checks;
        std::size_t seq = 0;
        auto level_of = [&](const FormulaPtr& f) {
            int lvl = -1;
            for (auto& [n, t] : free_vars_ordered(Node(f)))
                for (std::size_t i = 0; i < vars.size(); ++i)
                    if (vars[i].first == n) lvl = std::max(lvl, static_cast<int>(i));
            return lvl;
        };
        for (const auto& h : hyps) {
            FormulaPtr d = wd_formula(h, sig);
            checks.push_back({d, true, false, true, level_of(d), seq++});
            checks.push_back({h, true, false, false, level_of(h), seq++});
        }
        FormulaPtr dg = wd_formula(goal, sig);
        checks.push_back({dg, true, false, true, level_of(dg), seq++});
        int last_level = static_cast<int>(vars.size()) - 1;
        checks.push_back({goal, false, true, false, last_level, seq++});

        std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) {
            if (a.level != b.level) return a.level < b.level;
            return a.seq < b.seq;
        });

        Evaluator ev(sig, bounds);
        Env env;
        Int covered = 0;

        // product of domain sizes below a level, for counting pruned models
        auto tail_product = [&](int level) {
            Int p = 1;
            for (std::size_t i = static_cast<std::size_t>(level) + 1; i < sizes.size(); ++i)
                p *= sizes[i];
            return p;
        };

        std::optional<Interpretation> found;

        // run checks attached to `level`; returns false when the model
        // (prefix) is pruned, sets `found` when the goal check refutes
        auto run_level_checks = [&](int level) -> bool {
            for (const auto& c : checks) {
                if (c.level != level) continue;
                if (c.is_goal) {
                    TriBool v = ev.eval3(c.formula, env);
                    if (v != TriBool::True) {
                        Interpretation m;
                        for (const auto& [n, t] : vars) m.assignment.emplace_back(n, env.at(n));
                        found = m;
                        return false;
                    }
                } else if (c.two_valued) {
                    if (!ev.eval2(c.formula, env)) return false;
                } else {
                    if (ev.eval3(c.formula, env) != TriBool::True) return false;
                }
            }
            return true;
        };

        // depth-first enumeration in declaration order
        auto enumerate = [&](auto&& self, int level) -> bool {
            if (level == static_cast<int>(vars.size())) {
                covered += 1;
                return true;
            }
            for (Int i = 0; i < sizes[level]; ++i) {
                env[vars[level].first] = value_at(vars[level].second, i, bounds);
                if (!run_level_checks(level)) {
                    if (found) return false;
                    covered += tail_product(level);
                    continue;
                }
                if (!self(self, level + 1)) return false;
            }
            return true;
        };

        if (vars.empty()) {
            // a single, empty model; every check lives at level -1
            run_level_checks(-1);
            covered = 1;
        } else if (!run_level_checks(-1)) {
            // a closed hypothesis or D-image is false on every model
            covered = tail_product(-1);
        } else {
            enumerate(enumerate, 0);
        }

        result.models_checked = covered;
        if (found) {
            result.status = CheckResult::Status::Counterexample;
            result.cex = std::move(found);
        } else {
            result.status = CheckResult::Status::BoundedValid;
        }
        return result;
    } catch (const Evaluator::budget_exhausted&) {
        result.status = CheckResult::Status::Unknown;
        result.reason = "evaluation budget exhausted at these bounds";
        return result;
    } catch (const uninterpreted_error& e) {
        result.status = CheckResult::Status::Unknown;
        result.reason = e.what();
        return result;
    } catch (const error& e) {
        result.status = CheckResult::Status::Unknown;
        result.reason = e.what();
        return result;
    }
}

bool replay_counterexample(const std::vector<FormulaPtr>& hyps, const FormulaPtr& goal,
                           const Signature& sig, const Bounds& bounds,
                           const Interpretation& interp) {
    Evaluator ev(sig, bounds);
    Env env;
    for (const auto& [n, v] : interp.assignment) env[n] = v;
    for (const auto& h : hyps) {
        if (!ev.eval2(wd_formula(h, sig), env)) return false;
        if (ev.eval3(h, env) != TriBool::True) return false;
    }
    if (!ev.eval2(wd_formula(goal, sig), env)) return false;
    return ev.eval3(goal, env) != TriBool::True;
}

} // namespace wdrew
