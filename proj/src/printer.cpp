#include "wdrew/printer.hpp"

#include <sstream>

#include "wdrew/signature.hpp"

namespace wdrew {

namespace {

// Term precedence levels (see builtins table): 1 maplet, 2 set ops, 3 range,
// 4 add/sub, 5 mul/div, 6 unary minus, 7 application/atom.
void term_str(const TermPtr& t, int parent, std::ostream& os) {
    switch (t->kind()) {
    case Term::Kind::Var: os << t->sym(); return;
    case Term::Kind::IntLit: os << t->value(); return;
    case Term::Kind::App: break;
    }
    const std::string& sym = t->sym();
    if (sym == "empty") {
        os << "{}";
        return;
    }
    if (sym == "enum") {
        os << '{';
        for (std::size_t i = 0; i < t->args().size(); ++i) {
            if (i) os << ", ";
            term_str(t->args()[i], 0, os);
        }
        os << '}';
        return;
    }
    if (sym == "apply") {
        term_str(t->args()[0], 7, os);
        os << '(';
        term_str(t->args()[1], 0, os);
        os << ')';
        return;
    }
    if (sym == "neg") {
        os << '-';
        term_str(t->args()[0], 6, os);
        return;
    }
    const BuiltinFunc* bf = builtin_function(sym);
    if (bf && bf->fixity == Fixity::Infix) {
        int p = bf->precedence;
        bool parens = p < parent;
        if (parens) os << '(';
        // left-associative: the right operand needs the next-higher level
        term_str(t->args()[0], p, os);
        if (sym == "range") os << "..";
        else os << ' ' << bf->display << ' ';
        term_str(t->args()[1], p + 1, os);
        if (parens) os << ')';
        return;
    }
    // call syntax: builtins like card/dom/ran and user operators
    os << sym << '(';
    for (std::size_t i = 0; i < t->args().size(); ++i) {
        if (i) os << ", ";
        term_str(t->args()[i], 0, os);
    }
    os << ')';
}

// Formula precedence: 0 quantifier, 1 iff, 2 imp, 3 or, 4 and, 5 not, 6 atom.
void formula_str(const FormulaPtr& f, int parent, std::ostream& os) {
    auto wrap = [&](int own, auto&& print) {
        bool parens = own < parent;
        if (parens) os << '(';
        print();
        if (parens) os << ')';
    };
    switch (f->kind()) {
    case Formula::Kind::False: os << "false"; return;
    case Formula::Kind::True: os << "true"; return;
    case Formula::Kind::Equal:
        wrap(6, [&] {
            term_str(f->term_args()[0], 0, os);
            os << " = ";
            term_str(f->term_args()[1], 0, os);
        });
        return;
    case Formula::Kind::Pred: {
        const BuiltinPred* bp = builtin_predicate(f->pred_name());
        if (bp && bp->fixity == Fixity::Infix) {
            wrap(6, [&] {
                term_str(f->term_args()[0], 0, os);
                os << ' ' << bp->display << ' ';
                term_str(f->term_args()[1], 0, os);
            });
            return;
        }
        os << f->pred_name() << '(';
        for (std::size_t i = 0; i < f->term_args().size(); ++i) {
            if (i) os << ", ";
            term_str(f->term_args()[i], 0, os);
        }
        os << ')';
        return;
    }
    case Formula::Kind::Not:
        if (f->lhs()->kind() == Formula::Kind::Equal) {
            wrap(6, [&] {
                term_str(f->lhs()->term_args()[0], 0, os);
                os << " /= ";
                term_str(f->lhs()->term_args()[1], 0, os);
            });
            return;
        }
        wrap(5, [&] {
            os << "not ";
            formula_str(f->lhs(), 5, os);
        });
        return;
    case Formula::Kind::And:
        wrap(4, [&] {
            formula_str(f->lhs(), 4, os);
            os << " & ";
            formula_str(f->rhs(), 5, os);
        });
        return;
    case Formula::Kind::Or:
        wrap(3, [&] {
            formula_str(f->lhs(), 3, os);
            os << " or ";
            formula_str(f->rhs(), 4, os);
        });
        return;
    case Formula::Kind::Imp:
        // right-associative
        wrap(2, [&] {
            formula_str(f->lhs(), 3, os);
            os << " => ";
            formula_str(f->rhs(), 2, os);
        });
        return;
    case Formula::Kind::Iff:
        wrap(1, [&] {
            formula_str(f->lhs(), 1, os);
            os << " <=> ";
            formula_str(f->rhs(), 2, os);
        });
        return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
        wrap(0, [&] {
            os << (f->kind() == Formula::Kind::Forall ? '!' : '#');
            os << f->bound_var() << " : " << f->bound_type().str() << " . ";
            formula_str(f->body(), 0, os);
        });
        return;
    }
}

} // namespace

std::string print_term(const TermPtr& t) {
    std::ostringstream os;
    term_str(t, 0, os);
    return os.str();
}

std::string print_formula(const FormulaPtr& f) {
    std::ostringstream os;
    formula_str(f, 0, os);
    return os.str();
}

std::string print_node(const Node& n) {
    return is_term(n) ? print_term(as_term(n)) : print_formula(as_formula(n));
}

std::string Substitution::str() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto& [name, t] : map_) {
        if (!first) os << ", ";
        first = false;
        os << name << " := " << print_term(t);
    }
    os << '}';
    return os.str();
}

} // namespace wdrew
