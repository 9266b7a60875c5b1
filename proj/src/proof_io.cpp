#include "wdrew/proof_io.hpp"

#include <sstream>

#include "wdrew/parser.hpp"
#include "wdrew/printer.hpp"

namespace wdrew {

namespace {

// variables of the node's sequent that the base signature does not declare
std::vector<std::pair<std::string, Type>> extra_vars(const Sequent& s, const Signature& base) {
    std::vector<std::pair<std::string, Type>> out;
    auto scan = [&](const FormulaPtr& f) {
        for (auto& [n, t] : free_vars_ordered(Node(f))) {
            if (base.variable_type(n)) continue;
            bool seen = false;
            for (auto& [en, et] : out)
                if (en == n) seen = true;
            if (!seen) out.emplace_back(n, t);
        }
    };
    for (const auto& h : s.hyps()) scan(h);
    scan(s.goal());
    return out;
}

std::string params_to_text(RuleId rule, const RuleParams& p, const std::optional<Bounds>& ob) {
    std::ostringstream os;
    switch (rule) {
    case RuleId::Mon:
    case RuleId::NegHyp:
    case RuleId::AndHyp:
    case RuleId::HypWD:
        os << " hyp=" << (*p.hyp_index + 1);
        break;
    case RuleId::Cut:
        os << " P='" << print_formula(p.formula) << "'";
        break;
    case RuleId::EqHyp:
        os << " hyp=" << (*p.hyp_index + 1) << " x=" << p.var << " P='"
           << print_formula(p.formula) << "'";
        break;
    case RuleId::AllHyp:
        os << " hyp=" << (*p.hyp_index + 1) << " E='" << print_term(p.term) << "'";
        break;
    case RuleId::RewriteHyp:
    case RuleId::RewriteGoal:
        os << " rule=" << p.app->rule->name
           << " target=" << (p.app->targets_goal() ? "goal" : "hyp:" + std::to_string(p.app->hyp_index + 1))
           << " pos=" << position_str(p.app->pos) << " subst='" << p.app->subst.str() << "'";
        break;
    case RuleId::OracleClose: {
        Bounds b = ob.value_or(Bounds{});
        os << " lo=" << b.int_lo << " hi=" << b.int_hi << " given=" << b.given_size
           << " nesting=" << b.max_nesting << " budget=" << b.budget;
        break;
    }
    default: break;
    }
    return os.str();
}

void node_to_text(const ProofTreePtr& t, const Signature& base, int depth, std::ostream& os) {
    std::string ind(static_cast<std::size_t>(depth) * 2, ' ');
    os << ind << "seq:";
    for (auto& [n, ty] : extra_vars(t->conclusion, base)) os << " [" << n << " : " << ty.str() << "]";
    os << ' ' << t->conclusion.str() << '\n';
    os << ind << "rule: " << rule_name(t->rule) << params_to_text(t->rule, t->params, t->oracle_bounds)
       << '\n';
    for (const auto& c : t->children) node_to_text(c, base, depth + 1, os);
}

// --- reading -------------------------------------------------------------

struct Line {
    int depth;
    std::string key; // "seq" or "rule"
    std::string rest;
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        std::size_t indent = 0;
        while (indent < raw.size() && raw[indent] == ' ') ++indent;
        if (indent == raw.size()) continue; // blank
        if (indent % 2 != 0) throw error("bad indentation in proof text");
        std::string body = raw.substr(indent);
        auto colon = body.find(':');
        if (colon == std::string::npos) throw error("bad proof line: " + raw);
        Line l;
        l.depth = static_cast<int>(indent / 2);
        l.key = body.substr(0, colon);
        l.rest = body.substr(colon + 1);
        if (!l.rest.empty() && l.rest[0] == ' ') l.rest.erase(0, 1);
        out.push_back(std::move(l));
    }
    return out;
}

// parse "key=value" parameter words; quoted values may contain spaces
std::map<std::string, std::string> parse_kv(const std::string& s) {
    std::map<std::string, std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        if (i >= s.size()) break;
        std::size_t eq = s.find('=', i);
        if (eq == std::string::npos) throw error("bad parameter text: " + s);
        std::string key = s.substr(i, eq - i);
        i = eq + 1;
        std::string value;
        if (i < s.size() && s[i] == '\'') {
            std::size_t close = s.find('\'', i + 1);
            if (close == std::string::npos) throw error("unterminated quote in: " + s);
            value = s.substr(i + 1, close - i - 1);
            i = close + 1;
        } else {
            std::size_t end = s.find(' ', i);
            if (end == std::string::npos) end = s.size();
            value = s.substr(i, end - i);
            i = end;
        }
        out[key] = value;
    }
    return out;
}

Substitution parse_subst_text(const std::string& text, const Signature& sig) {
    Parser p(tokenize(text), sig);
    p.expect(Tok::LBrace, "'{'");
    std::map<std::string, TermPtr> m;
    if (!p.accept(Tok::RBrace)) {
        while (true) {
            std::string name = p.expect(Tok::Ident, "a variable name").text;
            p.expect(Tok::Colon, "':='");
            p.expect(Tok::Eq, "':='");
            TermPtr t = p.parse_term();
            m.emplace(name, t);
            if (!p.accept(Tok::Comma)) break;
        }
        p.expect(Tok::RBrace, "'}'");
    }
    return Substitution::of(std::move(m));
}

// parse a `seq:` payload: optional [x : T] declarations, hypotheses
// separated by ';', then '|-' and the goal
Sequent parse_sequent_text(const std::string& text, const SignaturePtr& base) {
    SignaturePtr sig = base;
    // leading [x : T] declarations; the tokenizer has no bracket token, so
    // they are scanned on the raw string
    Signature extended = *base;
    bool any_extra = false;
    std::string rest = text;
    while (true) {
        std::size_t start = rest.find_first_not_of(' ');
        if (start == std::string::npos || rest[start] != '[') break;
        std::size_t close = rest.find(']', start);
        if (close == std::string::npos) throw error("unterminated variable declaration");
        std::string decl = rest.substr(start + 1, close - start - 1);
        auto colon = decl.find(':');
        if (colon == std::string::npos) throw error("bad variable declaration: " + decl);
        std::string name = decl.substr(0, colon);
        std::string tname = decl.substr(colon + 1);
        auto trim = [](std::string& s) {
            while (!s.empty() && s.front() == ' ') s.erase(0, 1);
            while (!s.empty() && s.back() == ' ') s.pop_back();
        };
        trim(name);
        trim(tname);
        extended.add_variable(name, parse_type(tname, extended));
        any_extra = true;
        rest = rest.substr(close + 1);
    }
    if (any_extra) sig = std::make_shared<Signature>(extended);

    Parser p(tokenize(rest), *sig);
    std::vector<FormulaPtr> hyps;
    if (!p.at(Tok::Turnstile)) {
        while (true) {
            hyps.push_back(p.parse_formula());
            if (p.accept(Tok::Semi)) continue;
            break;
        }
    }
    p.expect(Tok::Turnstile, "'|-'");
    FormulaPtr goal = p.parse_formula();
    if (!p.at_end()) p.fail("unexpected input after the goal");
    return Sequent(sig, std::move(hyps), std::move(goal));
}

RuleParams params_from_kv(RuleId rule, const std::map<std::string, std::string>& kv,
                          const Sequent& s, const ProofContext& ctx, std::optional<Bounds>& ob) {
    RuleParams p;
    auto get = [&](const char* k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end()) throw error(std::string("missing parameter '") + k + "'");
        return it->second;
    };
    switch (rule) {
    case RuleId::Mon:
    case RuleId::NegHyp:
    case RuleId::AndHyp:
    case RuleId::HypWD:
        p.hyp_index = std::stoul(get("hyp")) - 1;
        break;
    case RuleId::Cut:
        p.formula = parse_formula(get("P"), *s.sig());
        break;
    case RuleId::EqHyp: {
        p.hyp_index = std::stoul(get("hyp")) - 1;
        p.var = get("x");
        if (*p.hyp_index >= s.hyps().size()) throw error("eqHyp hypothesis index out of range");
        const FormulaPtr& h = s.hyps()[*p.hyp_index];
        if (h->kind() != Formula::Kind::Equal) throw error("eqHyp hypothesis is not an equality");
        Signature with_x = s.sig()->with_variable(p.var, h->term_args()[0]->type());
        p.formula = parse_formula(get("P"), with_x);
        break;
    }
    case RuleId::AllHyp:
        p.hyp_index = std::stoul(get("hyp")) - 1;
        p.term = parse_term(get("E"), *s.sig());
        break;
    case RuleId::RewriteHyp:
    case RuleId::RewriteGoal: {
        auto app = std::make_shared<Application>();
        auto it = ctx.rules.find(get("rule"));
        if (it == ctx.rules.end())
            throw error("proof references unknown rule '" + get("rule") + "'");
        app->rule = it->second;
        const std::string& target = get("target");
        app->hyp_index = target == "goal" ? -1 : std::stoi(target.substr(4)) - 1;
        app->pos = parse_position(get("pos"));
        app->subst = parse_subst_text(get("subst"), *s.sig());
        p.app = app;
        break;
    }
    case RuleId::OracleClose: {
        Bounds b;
        b.int_lo = std::stoll(get("lo"));
        b.int_hi = std::stoll(get("hi"));
        b.given_size = std::stoi(get("given"));
        b.max_nesting = std::stoi(get("nesting"));
        b.budget = std::stoull(get("budget"));
        ob = b;
        break;
    }
    default: break;
    }
    return p;
}

ProofTreePtr read_node(const std::vector<Line>& lines, std::size_t& i, int depth,
                       const ProofContext& ctx) {
    if (i >= lines.size()) throw error("truncated proof text");
    if (lines[i].key != "seq" || lines[i].depth != depth)
        throw error("expected a 'seq:' line at depth " + std::to_string(depth));
    Sequent s = parse_sequent_text(lines[i].rest, ctx.sig);
    ++i;
    if (i >= lines.size() || lines[i].key != "rule" || lines[i].depth != depth)
        throw error("expected a 'rule:' line after the sequent");
    std::string rest = lines[i].rest;
    ++i;
    std::string name = rest;
    std::string paramtext;
    auto space = rest.find(' ');
    if (space != std::string::npos) {
        name = rest.substr(0, space);
        paramtext = rest.substr(space + 1);
    }
    auto id = rule_from_name(name);
    if (!id) throw error("unknown rule '" + name + "' in proof text");
    std::optional<Bounds> ob;
    RuleParams params = params_from_kv(*id, parse_kv(paramtext), s, ctx, ob);
    std::vector<ProofTreePtr> children;
    while (i < lines.size() && lines[i].depth == depth + 1)
        children.push_back(read_node(lines, i, depth + 1, ctx));
    return ProofTree::make(std::move(s), *id, std::move(params), std::move(children), ob);
}

} // namespace

std::string tree_to_text(const ProofTreePtr& t) {
    std::ostringstream os;
    node_to_text(t, *t->conclusion.sig(), 0, os);
    return os.str();
}

ProofTreePtr tree_from_text(const std::string& text, const ProofContext& ctx) {
    auto lines = split_lines(text);
    std::size_t i = 0;
    auto t = read_node(lines, i, 0, ctx);
    if (i != lines.size()) throw error("trailing lines after the proof tree");
    return t;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

Json node_to_json(const ProofTreePtr& t, const Signature& base) {
    Json j;
    Json vars = Json::array();
    for (auto& [n, ty] : extra_vars(t->conclusion, base))
        vars.push_back(Json{{"name", n}, {"type", ty.str()}});
    j["vars"] = std::move(vars);
    Json hyps = Json::array();
    for (const auto& h : t->conclusion.hyps()) hyps.push_back(print_formula(h));
    j["hyps"] = std::move(hyps);
    j["goal"] = print_formula(t->conclusion.goal());
    j["rule"] = rule_name(t->rule);
    std::string params = params_to_text(t->rule, t->params, t->oracle_bounds);
    if (!params.empty() && params[0] == ' ') params.erase(0, 1);
    j["params"] = params;
    Json kids = Json::array();
    for (const auto& c : t->children) kids.push_back(node_to_json(c, base));
    j["children"] = std::move(kids);
    return j;
}

ProofTreePtr node_from_json(const Json& j, const ProofContext& ctx) {
    SignaturePtr sig = ctx.sig;
    if (!j.at("vars").empty()) {
        Signature ext = *ctx.sig;
        for (const auto& v : j.at("vars"))
            ext.add_variable(v.at("name").get<std::string>(),
                             parse_type(v.at("type").get<std::string>(), ext));
        sig = std::make_shared<Signature>(ext);
    }
    std::vector<FormulaPtr> hyps;
    for (const auto& h : j.at("hyps")) hyps.push_back(parse_formula(h.get<std::string>(), *sig));
    FormulaPtr goal = parse_formula(j.at("goal").get<std::string>(), *sig);
    Sequent s(sig, std::move(hyps), std::move(goal));
    auto id = rule_from_name(j.at("rule").get<std::string>());
    if (!id) throw error("unknown rule in proof JSON");
    std::optional<Bounds> ob;
    RuleParams params = params_from_kv(*id, parse_kv(j.at("params").get<std::string>()), s, ctx, ob);
    std::vector<ProofTreePtr> children;
    for (const auto& c : j.at("children")) children.push_back(node_from_json(c, ctx));
    return ProofTree::make(std::move(s), *id, std::move(params), std::move(children), ob);
}

} // namespace

Json tree_to_json(const ProofTreePtr& t) { return node_to_json(t, *t->conclusion.sig()); }

ProofTreePtr tree_from_json(const Json& j, const ProofContext& ctx) {
    return node_from_json(j, ctx);
}

} // namespace wdrew
