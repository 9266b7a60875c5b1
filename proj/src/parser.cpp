#include "wdrew/parser.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace wdrew {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    int line = 1, col = 1;

    bool done() const { return i >= s.size(); }
    char ch() const { return s[i]; }
    bool starts(const char* w) const { return s.compare(i, std::char_traits<char>::length(w), w) == 0; }
    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n && i < s.size(); ++k, ++i) {
            if (s[i] == '\n') { ++line; col = 1; } else { ++col; }
        }
    }
};

const std::vector<std::pair<const char*, Tok>>& unicode_ops() {
    static const std::vector<std::pair<const char*, Tok>> table = {
        {"∀", Tok::Bang},    {"∃", Tok::Hash},   {"∧", Tok::Amp},
        {"∨", Tok::OrKw},    {"¬", Tok::NotKw},  {"⇒", Tok::Implies},
        {"⇔", Tok::Iff},     {"≠", Tok::Neq},    {"≤", Tok::Le},
        {"≥", Tok::Ge},      {"∈", Tok::InKw},   {"∪", Tok::Union},
        {"∩", Tok::Inter},   {"↦", Tok::Maplet}, {"÷", Tok::Slash},
        {"×", Tok::StarStar},{"⊥", Tok::FalseKw},{"⊤", Tok::TrueKw},
        {"·", Tok::Dot},     {"−", Tok::Minus},  {"⊢", Tok::Turnstile},
    };
    return table;
}

const std::vector<std::pair<const char*, Tok>>& ascii_ops() {
    // longest-match first
    static const std::vector<std::pair<const char*, Tok>> table = {
        {"<=>", Tok::Iff},   {"|->", Tok::Maplet}, {"**", Tok::StarStar}, {"=>", Tok::Implies},
        {"<=", Tok::Le},     {">=", Tok::Ge},      {"/=", Tok::Neq},      {"/\\", Tok::Inter},
        {"\\/", Tok::Union}, {"..", Tok::Range},   {"|-", Tok::Turnstile},{"->", Tok::Arrow},
        {"(", Tok::LParen},  {")", Tok::RParen},   {"{", Tok::LBrace},    {"}", Tok::RBrace},
        {",", Tok::Comma},   {";", Tok::Semi},     {":", Tok::Colon},     {".", Tok::Dot},
        {"+", Tok::Plus},    {"-", Tok::Minus},    {"*", Tok::Star},      {"/", Tok::Slash},
        {"\\", Tok::Backslash}, {"=", Tok::Eq},    {"<", Tok::Lt},        {">", Tok::Gt},
        {"&", Tok::Amp},     {"!", Tok::Bang},     {"#", Tok::Hash},
    };
    return table;
}

} // namespace

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    Cursor c{text};
    while (!c.done()) {
        char ch = c.ch();
        if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') { c.advance(1); continue; }
        if (c.starts("//")) {
            while (!c.done() && c.ch() != '\n') c.advance(1);
            continue;
        }
        int line = c.line, col = c.col;
        if (c.starts("∅")) { // empty set, one glyph for '{' '}'
            out.push_back({Tok::LBrace, "{", line, col});
            out.push_back({Tok::RBrace, "}", line, col});
            c.advance(3);
            continue;
        }
        bool matched = false;
        for (auto& [w, k] : unicode_ops()) {
            if (c.starts(w)) {
                out.push_back({k, w, line, col});
                c.advance(std::char_traits<char>::length(w));
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string num;
            while (!c.done() && std::isdigit(static_cast<unsigned char>(c.ch()))) {
                num += c.ch();
                c.advance(1);
            }
            out.push_back({Tok::Number, num, line, col});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string id;
            while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.ch())) || c.ch() == '_')) {
                id += c.ch();
                c.advance(1);
            }
            Tok k = Tok::Ident;
            if (id == "not") k = Tok::NotKw;
            else if (id == "or") k = Tok::OrKw;
            else if (id == "in") k = Tok::InKw;
            else if (id == "true") k = Tok::TrueKw;
            else if (id == "false") k = Tok::FalseKw;
            out.push_back({k, id, line, col});
            continue;
        }
        for (auto& [w, k] : ascii_ops()) {
            if (c.starts(w)) {
                out.push_back({k, w, line, col});
                c.advance(std::char_traits<char>::length(w));
                matched = true;
                break;
            }
        }
        if (!matched) throw parse_error(std::string("unexpected character '") + ch + "'", c.line, c.col);
    }
    out.push_back({Tok::End, "", c.line, c.col});
    return out;
}

// ---------------------------------------------------------------------------
// Type expressions with unification variables
// ---------------------------------------------------------------------------

namespace {

struct TE {
    enum class K { Var, Int, Bool, Given, Pow, Prod } k;
    std::string name; // Given
    int a = -1, b = -1;
};

class TEnv {
public:
    int var() {
        nodes_.push_back({TE::K::Var, "", -1, -1});
        binding_.push_back(-1);
        return static_cast<int>(nodes_.size()) - 1;
    }
    int mk(TE te) {
        nodes_.push_back(te);
        binding_.push_back(-1);
        return static_cast<int>(nodes_.size()) - 1;
    }
    int mk_int() { return mk({TE::K::Int, "", -1, -1}); }
    int mk_bool() { return mk({TE::K::Bool, "", -1, -1}); }
    int mk_given(const std::string& n) { return mk({TE::K::Given, n, -1, -1}); }
    int mk_pow(int e) { return mk({TE::K::Pow, "", e, -1}); }
    int mk_prod(int l, int r) { return mk({TE::K::Prod, "", l, r}); }

    int of_type(const Type& t) {
        switch (t.kind()) {
        case Type::Kind::Int: return mk_int();
        case Type::Kind::Bool: return mk_bool();
        case Type::Kind::Given: return mk_given(t.given_name());
        case Type::Kind::Pow: return mk_pow(of_type(t.elem()));
        case Type::Kind::Prod: return mk_prod(of_type(t.left()), of_type(t.right()));
        }
        return mk_int();
    }

    int find(int i) const {
        while (nodes_[i].k == TE::K::Var && binding_[i] >= 0) i = binding_[i];
        return i;
    }

    bool occurs(int v, int t) const {
        t = find(t);
        if (t == v) return true;
        const TE& te = nodes_[t];
        if (te.k == TE::K::Pow) return occurs(v, te.a);
        if (te.k == TE::K::Prod) return occurs(v, te.a) || occurs(v, te.b);
        return false;
    }

    bool unify(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) return true;
        if (nodes_[x].k == TE::K::Var) {
            if (occurs(x, y)) return false;
            binding_[x] = y;
            return true;
        }
        if (nodes_[y].k == TE::K::Var) return unify(y, x);
        if (nodes_[x].k != nodes_[y].k) return false;
        switch (nodes_[x].k) {
        case TE::K::Int:
        case TE::K::Bool: return true;
        case TE::K::Given: return nodes_[x].name == nodes_[y].name;
        case TE::K::Pow: return unify(nodes_[x].a, nodes_[y].a);
        case TE::K::Prod: return unify(nodes_[x].a, nodes_[y].a) && unify(nodes_[x].b, nodes_[y].b);
        default: return false;
        }
    }

    std::optional<Type> to_type(int i) const {
        i = find(i);
        const TE& te = nodes_[i];
        switch (te.k) {
        case TE::K::Var: return std::nullopt;
        case TE::K::Int: return Type::integer();
        case TE::K::Bool: return Type::boolean();
        case TE::K::Given: return Type::given(te.name);
        case TE::K::Pow: {
            auto e = to_type(te.a);
            if (!e) return std::nullopt;
            return Type::pow(*e);
        }
        case TE::K::Prod: {
            auto l = to_type(te.a);
            auto r = to_type(te.b);
            if (!l || !r) return std::nullopt;
            return Type::prod(*l, *r);
        }
        }
        return std::nullopt;
    }

    std::string describe(int i) const {
        auto t = to_type(i);
        if (t) return t->str();
        i = find(i);
        const TE& te = nodes_[i];
        switch (te.k) {
        case TE::K::Var: return "?";
        case TE::K::Pow: return "POW(" + describe(te.a) + ")";
        case TE::K::Prod: return describe(te.a) + " ** " + describe(te.b);
        default: return "?";
        }
    }

private:
    std::vector<TE> nodes_;
    std::vector<int> binding_;
};

// Builtin typing schemes; fresh variables are allocated per use.
struct Scheme {
    std::vector<int> params;
    int result;
};

Scheme instantiate(TEnv& env, const std::string& sym, std::size_t nargs) {
    auto I = [&] { return env.mk_int(); };
    if (sym == "add" || sym == "sub" || sym == "mul" || sym == "div")
        return {{I(), I()}, I()};
    if (sym == "neg") return {{I()}, I()};
    if (sym == "range") return {{I(), I()}, env.mk_pow(I())};
    if (sym == "card") return {{env.mk_pow(env.var())}, I()};
    if (sym == "empty") return {{}, env.mk_pow(env.var())};
    if (sym == "enum") {
        int a = env.var();
        std::vector<int> ps(nargs, -1);
        for (auto& p : ps) p = a;
        return {ps, env.mk_pow(a)};
    }
    if (sym == "union" || sym == "inter" || sym == "diff") {
        int s = env.mk_pow(env.var());
        return {{s, s}, s};
    }
    if (sym == "maplet") {
        int a = env.var(), b = env.var();
        return {{a, b}, env.mk_prod(a, b)};
    }
    if (sym == "dom") {
        int a = env.var(), b = env.var();
        return {{env.mk_pow(env.mk_prod(a, b))}, env.mk_pow(a)};
    }
    if (sym == "ran") {
        int a = env.var(), b = env.var();
        return {{env.mk_pow(env.mk_prod(a, b))}, env.mk_pow(b)};
    }
    if (sym == "ovl") {
        int r = env.mk_pow(env.mk_prod(env.var(), env.var()));
        return {{r, r}, r};
    }
    if (sym == "apply") {
        int a = env.var(), b = env.var();
        return {{env.mk_pow(env.mk_prod(a, b)), a}, b};
    }
    // predicates
    if (sym == "le" || sym == "lt" || sym == "ge" || sym == "gt") return {{I(), I()}, -1};
    if (sym == "mem") {
        int a = env.var();
        return {{a, env.mk_pow(a)}, -1};
    }
    if (sym == "finite") return {{env.mk_pow(env.var())}, -1};
    if (sym == "functional")
        return {{env.mk_pow(env.mk_prod(env.var(), env.var()))}, -1};
    throw error("no typing scheme for symbol " + sym);
}

} // namespace

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser::Impl {
    std::vector<Token> toks;
    std::size_t pos = 0;
    const Signature& sig;
    TEnv env;
    // bound variables currently in scope (innermost last)
    std::vector<std::pair<std::string, Type>> scope;

    Impl(std::vector<Token> t, const Signature& s) : toks(std::move(t)), sig(s) {}

    const Token& peek() const { return toks[pos]; }
    Token next() { return toks[pos == toks.size() - 1 ? pos : pos++]; }
    bool at(Tok k) const { return toks[pos].kind == k; }
    bool accept(Tok k) {
        if (at(k)) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(msg, peek().line, peek().col);
    }
    Token expect(Tok k, const std::string& what) {
        if (!at(k)) fail("expected " + what);
        return toks[pos++];
    }

    std::optional<Type> lookup_var(const std::string& name) const {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == name) return it->second;
        return sig.variable_type(name);
    }

    // --- types ------------------------------------------------------------

    Type parse_type_atom() {
        if (accept(Tok::LParen)) {
            Type t = parse_type();
            expect(Tok::RParen, "')'");
            return t;
        }
        Token t = expect(Tok::Ident, "a type");
        if (t.text == "INT") return Type::integer();
        if (t.text == "BOOL") return Type::boolean();
        if (t.text == "POW") {
            expect(Tok::LParen, "'(' after POW");
            Type e = parse_type();
            expect(Tok::RParen, "')'");
            return Type::pow(e);
        }
        if (sig.has_given_set(t.text)) return Type::given(t.text);
        throw parse_error("unknown type '" + t.text + "' (given sets must be declared)", t.line, t.col);
    }

    Type parse_type() {
        Type t = parse_type_atom();
        while (accept(Tok::StarStar)) {
            Type r = parse_type_atom();
            t = Type::prod(t, r);
        }
        return t;
    }

    // --- terms ------------------------------------------------------------
    // Terms are built typed as we go; every node's type expression is carried
    // alongside. Build happens at the end when all unification is done, so
    // intermediate results are (thunk, te) pairs keyed by a raw tree.

    struct RT {
        enum class K { Var, Lit, App } k;
        std::string sym;
        Int value;
        std::vector<std::shared_ptr<RT>> args;
        int te = -1;
        int line = 0, col = 0;
    };
    using RTP = std::shared_ptr<RT>;

    RTP mk_app(const std::string& sym, std::vector<RTP> args, const Token& where) {
        auto scheme = instantiate(env, sym, args.size());
        if (scheme.params.size() != args.size())
            throw parse_error("wrong number of arguments for " + sym, where.line, where.col);
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (!env.unify(args[i]->te, scheme.params[i]))
                throw parse_error("type error in argument " + std::to_string(i + 1) + " of '" +
                                      sym + "': expected " + env.describe(scheme.params[i]) +
                                      ", got " + env.describe(args[i]->te),
                                  args[i]->line, args[i]->col);
        }
        auto r = std::make_shared<RT>();
        r->k = RT::K::App;
        r->sym = sym;
        r->args = std::move(args);
        r->te = scheme.result;
        r->line = where.line;
        r->col = where.col;
        return r;
    }

    RTP parse_term_primary() {
        Token t = peek();
        if (accept(Tok::LParen)) {
            RTP inner = parse_term_top();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (at(Tok::Number)) {
            next();
            auto r = std::make_shared<RT>();
            r->k = RT::K::Lit;
            r->value = Int(t.text);
            r->te = env.mk_int();
            r->line = t.line;
            r->col = t.col;
            return r;
        }
        if (accept(Tok::LBrace)) {
            std::vector<RTP> elems;
            if (!accept(Tok::RBrace)) {
                elems.push_back(parse_term_top());
                while (accept(Tok::Comma)) elems.push_back(parse_term_top());
                expect(Tok::RBrace, "'}'");
            }
            if (elems.empty()) return mk_app("empty", {}, t);
            return mk_app("enum", std::move(elems), t);
        }
        if (at(Tok::Ident)) {
            next();
            const std::string& name = t.text;
            if (const auto* bf = builtin_function(name); bf && bf->fixity == Fixity::Call) {
                expect(Tok::LParen, "'(' after " + name);
                std::vector<RTP> args;
                args.push_back(parse_term_top());
                while (accept(Tok::Comma)) args.push_back(parse_term_top());
                expect(Tok::RParen, "')'");
                if (bf->arity >= 0 && static_cast<int>(args.size()) != bf->arity)
                    throw parse_error(name + " takes " + std::to_string(bf->arity) + " argument(s)",
                                      t.line, t.col);
                return mk_app(name, std::move(args), t);
            }
            if (builtin_predicate(name))
                throw parse_error("'" + name + "' is a predicate, not a term", t.line, t.col);
            if (const auto* uf = sig.user_function(name)) {
                expect(Tok::LParen, "'(' after operator " + name);
                std::vector<RTP> args;
                if (!at(Tok::RParen)) {
                    args.push_back(parse_term_top());
                    while (accept(Tok::Comma)) args.push_back(parse_term_top());
                }
                expect(Tok::RParen, "')'");
                if (args.size() != uf->params.size())
                    throw parse_error(name + " takes " + std::to_string(uf->params.size()) +
                                          " argument(s)",
                                      t.line, t.col);
                auto r = std::make_shared<RT>();
                r->k = RT::K::App;
                r->sym = name;
                r->args = std::move(args);
                r->line = t.line;
                r->col = t.col;
                for (std::size_t i = 0; i < r->args.size(); ++i) {
                    int want = env.of_type(uf->params[i].second);
                    if (!env.unify(r->args[i]->te, want))
                        throw parse_error("type error in argument " + std::to_string(i + 1) +
                                              " of '" + name + "': expected " +
                                              uf->params[i].second.str() + ", got " +
                                              env.describe(r->args[i]->te),
                                          r->args[i]->line, r->args[i]->col);
                }
                r->te = env.of_type(uf->result);
                return r;
            }
            if (auto vt = lookup_var(name)) {
                auto r = std::make_shared<RT>();
                r->k = RT::K::Var;
                r->sym = name;
                r->te = env.of_type(*vt);
                r->line = t.line;
                r->col = t.col;
                return r;
            }
            throw parse_error("unknown identifier '" + name + "' (variables must be declared)",
                              t.line, t.col);
        }
        fail("expected a term");
    }

    RTP parse_term_postfix() {
        RTP t = parse_term_primary();
        while (at(Tok::LParen)) {
            Token where = next();
            RTP arg = parse_term_top();
            expect(Tok::RParen, "')'");
            t = mk_app("apply", {t, arg}, where);
        }
        return t;
    }

    RTP parse_term_unary() {
        if (at(Tok::Minus)) {
            Token where = next();
            RTP t = parse_term_unary();
            return mk_app("neg", {t}, where);
        }
        return parse_term_postfix();
    }

    RTP parse_term_muldiv() {
        RTP t = parse_term_unary();
        while (at(Tok::Star) || at(Tok::Slash)) {
            Token op = next();
            RTP r = parse_term_unary();
            t = mk_app(op.kind == Tok::Star ? "mul" : "div", {t, r}, op);
        }
        return t;
    }

    RTP parse_term_addsub() {
        RTP t = parse_term_muldiv();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            Token op = next();
            RTP r = parse_term_muldiv();
            t = mk_app(op.kind == Tok::Plus ? "add" : "sub", {t, r}, op);
        }
        return t;
    }

    RTP parse_term_range() {
        RTP t = parse_term_addsub();
        if (at(Tok::Range)) {
            Token op = next();
            RTP r = parse_term_addsub();
            t = mk_app("range", {t, r}, op);
        }
        return t;
    }

    RTP parse_term_setop() {
        RTP t = parse_term_range();
        while (true) {
            std::string sym;
            if (at(Tok::Union)) sym = "union";
            else if (at(Tok::Inter)) sym = "inter";
            else if (at(Tok::Backslash)) sym = "diff";
            else if (at(Tok::Ident) && peek().text == "ovl") sym = "ovl";
            else break;
            Token op = next();
            RTP r = parse_term_range();
            t = mk_app(sym, {t, r}, op);
        }
        return t;
    }

    RTP parse_term_top() {
        RTP t = parse_term_setop();
        while (at(Tok::Maplet)) {
            Token op = next();
            RTP r = parse_term_setop();
            t = mk_app("maplet", {t, r}, op);
        }
        return t;
    }

    TermPtr build_term(const RTP& r) {
        auto ty = env.to_type(r->te);
        if (!ty)
            throw parse_error("ambiguous type (" + env.describe(r->te) +
                                  "); add context to fix the element type",
                              r->line, r->col);
        switch (r->k) {
        case RT::K::Var: return Term::var(r->sym, *ty);
        case RT::K::Lit: return Term::lit(r->value);
        case RT::K::App: {
            std::vector<TermPtr> args;
            args.reserve(r->args.size());
            for (auto& a : r->args) args.push_back(build_term(a));
            return Term::app(r->sym, std::move(args), *ty);
        }
        }
        throw error("unreachable");
    }

    // --- formulas -----------------------------------------------------------

    FormulaPtr parse_relational() {
        Token start = peek();
        RTP lhs = parse_term_top();
        if (at(Tok::Eq) || at(Tok::Neq)) {
            Token op = next();
            RTP rhs = parse_term_top();
            if (!env.unify(lhs->te, rhs->te))
                throw parse_error("equality between different types: " + env.describe(lhs->te) +
                                      " vs " + env.describe(rhs->te),
                                  op.line, op.col);
            auto f = Formula::equal(build_term(lhs), build_term(rhs));
            return op.kind == Tok::Eq ? f : Formula::not_(f);
        }
        std::string pred;
        if (at(Tok::Le)) pred = "le";
        else if (at(Tok::Lt)) pred = "lt";
        else if (at(Tok::Ge)) pred = "ge";
        else if (at(Tok::Gt)) pred = "gt";
        else if (at(Tok::InKw)) pred = "mem";
        else throw parse_error("expected a relational operator after term", peek().line, peek().col);
        Token op = next();
        RTP rhs = parse_term_top();
        auto scheme = instantiate(env, pred, 2);
        if (!env.unify(lhs->te, scheme.params[0]) || !env.unify(rhs->te, scheme.params[1]))
            throw parse_error("type error at '" + op.text + "': " + env.describe(lhs->te) + " " +
                                  op.text + " " + env.describe(rhs->te),
                              op.line, op.col);
        (void)start;
        return Formula::pred(pred, {build_term(lhs), build_term(rhs)});
    }

    FormulaPtr parse_atom_formula() {
        if (accept(Tok::TrueKw)) return Formula::true_();
        if (accept(Tok::FalseKw)) return Formula::false_();
        if (at(Tok::Ident)) {
            const std::string& name = peek().text;
            if (const auto* bp = builtin_predicate(name); bp && bp->fixity == Fixity::Call) {
                Token t = next();
                expect(Tok::LParen, "'(' after " + name);
                std::vector<RTP> args;
                args.push_back(parse_term_top());
                while (accept(Tok::Comma)) args.push_back(parse_term_top());
                expect(Tok::RParen, "')'");
                if (static_cast<int>(args.size()) != bp->arity)
                    throw parse_error(name + " takes " + std::to_string(bp->arity) + " argument(s)",
                                      t.line, t.col);
                auto scheme = instantiate(env, name, args.size());
                std::vector<TermPtr> built;
                for (std::size_t i = 0; i < args.size(); ++i) {
                    if (!env.unify(args[i]->te, scheme.params[i]))
                        throw parse_error("type error in argument " + std::to_string(i + 1) +
                                              " of '" + name + "'",
                                          args[i]->line, args[i]->col);
                }
                for (auto& a : args) built.push_back(build_term(a));
                return Formula::pred(name, std::move(built));
            }
        }
        if (at(Tok::LParen)) {
            // Could open a formula or a parenthesized term; try the formula
            // reading first and fall back to a relational term comparison.
            std::size_t save = pos;
            std::optional<parse_error> ferr;
            try {
                next();
                FormulaPtr f = parse_formula_rec();
                expect(Tok::RParen, "')'");
                return f;
            } catch (const parse_error& e) {
                ferr = e;
                pos = save;
            }
            try {
                return parse_relational();
            } catch (const parse_error& e) {
                // report whichever attempt got further
                if (ferr && (ferr->line > e.line || (ferr->line == e.line && ferr->col > e.col)))
                    throw *ferr;
                throw;
            }
        }
        return parse_relational();
    }

    FormulaPtr parse_unary_formula() {
        if (accept(Tok::NotKw)) return Formula::not_(parse_unary_formula());
        if (at(Tok::Bang) || at(Tok::Hash)) {
            bool uni = at(Tok::Bang);
            next();
            Token v = expect(Tok::Ident, "a bound variable name");
            // fresh-name discipline: no shadowing of anything in scope
            if (lookup_var(v.text))
                throw parse_error("binder shadows variable '" + v.text + "'", v.line, v.col);
            if (sig.has_given_set(v.text) || Signature::is_reserved(v.text) ||
                sig.user_function(v.text))
                throw parse_error("binder name '" + v.text + "' is taken", v.line, v.col);
            expect(Tok::Colon, "':' and a type after bound variable");
            Type ty = parse_type();
            if (ty.kind() == Type::Kind::Bool)
                throw parse_error("BOOL is a formula type; it cannot type a bound variable",
                                  v.line, v.col);
            expect(Tok::Dot, "'.' after binder");
            scope.emplace_back(v.text, ty);
            FormulaPtr body = parse_formula_rec();
            scope.pop_back();
            return uni ? Formula::forall(v.text, ty, body) : Formula::exists(v.text, ty, body);
        }
        return parse_atom_formula();
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_unary_formula();
        while (accept(Tok::Amp)) f = Formula::and_(f, parse_unary_formula());
        return f;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (accept(Tok::OrKw)) f = Formula::or_(f, parse_and());
        return f;
    }

    FormulaPtr parse_imp() {
        FormulaPtr f = parse_or();
        if (accept(Tok::Implies)) return Formula::imp(f, parse_imp()); // right-assoc
        return f;
    }

    FormulaPtr parse_formula_rec() {
        FormulaPtr f = parse_imp();
        while (accept(Tok::Iff)) f = Formula::iff(f, parse_imp());
        return f;
    }
};

Parser::Parser(std::vector<Token> toks, const Signature& sig)
    : impl_(std::make_shared<Impl>(std::move(toks), sig)) {}

FormulaPtr Parser::parse_formula() { return impl_->parse_formula_rec(); }
TermPtr Parser::parse_term() { return impl_->build_term(impl_->parse_term_top()); }
Type Parser::parse_type() { return impl_->parse_type(); }

FormulaPtr Parser::parse_formula_all() {
    FormulaPtr f = impl_->parse_formula_rec();
    if (!impl_->at(Tok::End)) impl_->fail("unexpected input after formula");
    return f;
}

TermPtr Parser::parse_term_all() {
    TermPtr t = parse_term();
    if (!impl_->at(Tok::End)) impl_->fail("unexpected input after term");
    return t;
}

Type Parser::parse_type_all() {
    Type t = impl_->parse_type();
    if (!impl_->at(Tok::End)) impl_->fail("unexpected input after type");
    return t;
}

const Token& Parser::peek() const { return impl_->peek(); }
Token Parser::next() { return impl_->next(); }
bool Parser::at(Tok k) const { return impl_->at(k); }
bool Parser::accept(Tok k) { return impl_->accept(k); }
Token Parser::expect(Tok k, const std::string& what) { return impl_->expect(k, what); }
bool Parser::at_end() const { return impl_->at(Tok::End); }
std::size_t Parser::offset() const { return impl_->pos; }

std::vector<Token> Parser::remaining() const {
    return std::vector<Token>(impl_->toks.begin() + static_cast<std::ptrdiff_t>(impl_->pos),
                              impl_->toks.end());
}
void Parser::fail(const std::string& msg) const { impl_->fail(msg); }

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
    return Parser(tokenize(text), sig).parse_formula_all();
}

TermPtr parse_term(const std::string& text, const Signature& sig) {
    return Parser(tokenize(text), sig).parse_term_all();
}

Type parse_type(const std::string& text, const Signature& sig) {
    return Parser(tokenize(text), sig).parse_type_all();
}

} // namespace wdrew
