#include "wdrew/theory.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "wdrew/parser.hpp"
#include "wdrew/printer.hpp"
#include "wdrew/serialize.hpp"
#include "wdrew/wd.hpp"

namespace fs = std::filesystem;

namespace wdrew {

std::vector<GroupedRulePtr> Theory::rule_views() const {
    std::vector<GroupedRulePtr> out;
    out.reserve(rules.size());
    for (const auto& r : rules) out.push_back(r);
    return out;
}

// ---------------------------------------------------------------------------
// Grouping up to metavariable renaming
// ---------------------------------------------------------------------------

namespace {

bool find_renaming_rec(const TermPtr& canonical, const TermPtr& candidate,
                       std::map<std::string, std::string>& fwd,
                       std::map<std::string, std::string>& bwd) {
    if (canonical->kind() != candidate->kind()) return false;
    switch (canonical->kind()) {
    case Term::Kind::Var: {
        if (!(canonical->type() == candidate->type())) return false;
        auto f = fwd.find(candidate->sym());
        auto b = bwd.find(canonical->sym());
        if (f != fwd.end()) return f->second == canonical->sym();
        if (b != bwd.end()) return false; // not injective
        fwd.emplace(candidate->sym(), canonical->sym());
        bwd.emplace(canonical->sym(), candidate->sym());
        return true;
    }
    case Term::Kind::IntLit: return canonical->value() == candidate->value();
    case Term::Kind::App: {
        if (canonical->sym() != candidate->sym() ||
            canonical->args().size() != candidate->args().size() ||
            !(canonical->type() == candidate->type()))
            return false;
        for (std::size_t i = 0; i < canonical->args().size(); ++i)
            if (!find_renaming_rec(canonical->args()[i], candidate->args()[i], fwd, bwd))
                return false;
        return true;
    }
    }
    return false;
}

// bijective variable renaming making `candidate` equal to `canonical`;
// maps candidate variable -> canonical variable term.
std::optional<Substitution> find_typed_renaming(const TermPtr& canonical,
                                                const TermPtr& candidate,
                                                const Signature& sig) {
    std::map<std::string, std::string> fwd, bwd;
    if (!find_renaming_rec(canonical, candidate, fwd, bwd)) return std::nullopt;
    std::map<std::string, TermPtr> m;
    for (auto& [from, to] : fwd) {
        auto ty = sig.variable_type(to);
        if (!ty) return std::nullopt;
        m.emplace(from, Term::var(to, *ty));
    }
    return Substitution::of(std::move(m));
}

} // namespace

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

bool at_ident(const Parser& p, const char* word) {
    return p.at(Tok::Ident) && p.peek().text == word;
}

bool at_section_end(const Parser& p) {
    return at_ident(p, "metavariables") || at_ident(p, "operators") || at_ident(p, "rewrite") ||
           at_ident(p, "end") || at_ident(p, "rule") || p.at_end();
}

} // namespace

Theory parse_theory(const std::string& text) {
    Theory t;
    auto sig = std::make_shared<Signature>();
    std::vector<Token> toks = tokenize(text);

    Signature empty;
    Parser head(toks, empty);
    if (!at_ident(head, "theory")) head.fail("expected 'theory'");
    head.next();
    t.name = head.expect(Tok::Ident, "a theory name").text;

    if (at_ident(head, "sets")) {
        head.next();
        while (head.at(Tok::Ident) && !at_section_end(head)) {
            sig->add_given_set(head.next().text);
            if (!head.accept(Tok::Comma)) break;
        }
    }

    std::vector<Token> rest = head.remaining();
    if (!rest.empty() && rest[0].kind == Tok::Ident && rest[0].text == "metavariables") {
        Parser p(rest, *sig);
        p.next();
        while (p.at(Tok::Ident) && !at_section_end(p)) {
            std::string name = p.next().text;
            p.expect(Tok::Colon, "':' after metavariable name");
            Type ty = p.parse_type();
            sig->add_variable(name, ty);
            if (!p.accept(Tok::Semi)) break;
        }
        // re-slice: later sections parse under the enriched signature
        rest = p.remaining();
    }

    while (!rest.empty() && rest[0].kind == Tok::Ident &&
           (rest[0].text == "operators" || rest[0].text == "rule")) {
        if (rest[0].text == "rule") break;
        // operators section: one declaration at a time, since each one may
        // extend the signature the next one uses
        Parser p(rest, *sig);
        p.next(); // 'operators'
        rest = p.remaining();
        while (true) {
            Parser q(rest, *sig);
            if (!q.at(Tok::Ident) || at_section_end(q)) {
                rest = q.remaining();
                break;
            }
            UserFunc uf;
            uf.name = q.next().text;
            q.expect(Tok::LParen, "'(' after operator name");
            Signature withParams = *sig;
            if (!q.at(Tok::RParen)) {
                while (true) {
                    std::string pn = q.expect(Tok::Ident, "a parameter name").text;
                    q.expect(Tok::Colon, "':' after parameter name");
                    Type pt = q.parse_type();
                    uf.params.emplace_back(pn, pt);
                    withParams.add_variable(pn, pt);
                    if (!q.accept(Tok::Comma)) break;
                }
            }
            q.expect(Tok::RParen, "')'");
            q.expect(Tok::Colon, "':' and a result type");
            uf.result = q.parse_type();
            if (at_ident(q, "wd")) {
                q.next();
                Parser w(q.remaining(), withParams);
                uf.wd_condition = w.parse_formula();
                // validate the condition: variables and totality
                for (const auto& v : free_vars(uf.wd_condition)) {
                    bool is_param = std::any_of(uf.params.begin(), uf.params.end(),
                                                [&](auto& pr) { return pr.first == v; });
                    if (!is_param)
                        throw type_error("wd condition of '" + uf.name +
                                         "' mentions non-parameter '" + v + "'");
                }
                if (!total_symbols_only(Node(uf.wd_condition), withParams))
                    throw type_error("wd condition of '" + uf.name +
                                     "' must use total symbols only");
                rest = w.remaining();
            } else {
                rest = q.remaining();
            }
            sig->add_function(std::move(uf));
            // optional separator
            Parser sep(rest, *sig);
            sep.accept(Tok::Semi);
            rest = sep.remaining();
        }
        break;
    }

    t.sig = sig;

    {
        Parser p(rest, *sig);
        if (at_ident(p, "rewrite")) {
            p.next();
            while (at_ident(p, "rule")) {
                p.next();
                std::string rname = p.expect(Tok::Ident, "a rule name").text;
                p.expect(Tok::Colon, "':' after rule name");
                TermPtr lhs = p.parse_term();
                p.expect(Tok::Arrow, "'->' after the left-hand side");
                bool automatic = false;
                if (at_ident(p, "auto")) { automatic = true; p.next(); }
                else if (at_ident(p, "manual")) { p.next(); }
                p.expect(Tok::LBrace, "'{' opening the case list");
                std::vector<RewriteCase> cases;
                while (true) {
                    FormulaPtr cond = p.parse_formula();
                    p.expect(Tok::Colon, "':' between condition and replacement");
                    TermPtr rhs = p.parse_term();
                    cases.push_back({cond, rhs});
                    if (p.accept(Tok::Semi)) {
                        if (p.at(Tok::RBrace)) break; // trailing separator
                        continue;
                    }
                    break;
                }
                p.expect(Tok::RBrace, "'}' closing the case list");

                auto g = std::make_shared<GroupedRule>();
                g->name = rname;
                g->automatic = automatic;
                g->lhs = lhs;
                g->cases = std::move(cases);
                g->lhs_is_variable = lhs->kind() == Term::Kind::Var;
                g->validate();
                if (g->lhs_is_variable)
                    t.warnings.push_back("rule " + rname +
                                         " violates clause 1 ('l is not a variable'); it can be "
                                         "analysed but never applied");

                // group with an existing rule when the left-hand sides are
                // equal up to metavariable renaming and the flags agree
                bool merged = false;
                for (auto& existing : t.rules) {
                    auto ren = find_typed_renaming(existing->lhs, g->lhs, *sig);
                    if (!ren) continue;
                    if (existing->automatic != g->automatic)
                        throw error("rules " + existing->name + " and " + g->name +
                                    " share a left-hand side but disagree on auto/manual");
                    try {
                        for (const auto& c : g->cases)
                            existing->cases.push_back(
                                {apply_subst(*ren, c.condition), apply_subst(*ren, c.rhs)});
                    } catch (const capture_error&) {
                        continue; // keep as its own group
                    }
                    existing->validate();
                    merged = true;
                    break;
                }
                if (!merged) t.rules.push_back(g);
            }
        }
        if (!at_ident(p, "end")) p.fail("expected 'end'");
        p.next();
        if (!p.at_end()) p.fail("unexpected input after 'end'");
    }
    return t;
}

Theory parse_theory_file(const std::string& path) {
    return parse_theory(read_file(path));
}

std::string print_theory(const Theory& t) {
    std::ostringstream os;
    os << "theory " << t.name << "\n";
    if (!t.sig->given_sets().empty()) {
        os << "  sets ";
        for (std::size_t i = 0; i < t.sig->given_sets().size(); ++i) {
            if (i) os << ", ";
            os << t.sig->given_sets()[i];
        }
        os << "\n";
    }
    if (!t.sig->variables().empty()) {
        os << "  metavariables\n";
        const auto& vars = t.sig->variables();
        for (std::size_t i = 0; i < vars.size(); ++i)
            os << "    " << vars[i].first << " : " << vars[i].second.str()
               << (i + 1 < vars.size() ? " ;" : "") << "\n";
    }
    if (!t.sig->user_functions().empty()) {
        os << "  operators\n";
        for (const auto& uf : t.sig->user_functions()) {
            os << "    " << uf.name << "(";
            for (std::size_t i = 0; i < uf.params.size(); ++i) {
                if (i) os << ", ";
                os << uf.params[i].first << " : " << uf.params[i].second.str();
            }
            os << ") : " << uf.result.str();
            if (uf.wd_condition) os << " wd " << print_formula(uf.wd_condition);
            os << " ;\n";
        }
    }
    if (!t.rules.empty()) {
        os << "  rewrite\n";
        for (const auto& g : t.rules) {
            os << "    rule " << g->name << " : " << print_term(g->lhs) << " -> "
               << (g->automatic ? "auto" : "manual") << " {\n";
            for (std::size_t i = 0; i < g->cases.size(); ++i)
                os << "      " << print_formula(g->cases[i].condition) << " : "
                   << print_term(g->cases[i].rhs) << (i + 1 < g->cases.size() ? " ;" : "")
                   << "\n";
            os << "    }\n";
        }
    }
    os << "end\n";
    return os.str();
}

bool theories_equal(const Theory& a, const Theory& b) {
    if (a.name != b.name) return false;
    if (a.sig->given_sets() != b.sig->given_sets()) return false;
    const auto& va = a.sig->variables();
    const auto& vb = b.sig->variables();
    if (va.size() != vb.size()) return false;
    for (std::size_t i = 0; i < va.size(); ++i)
        if (va[i].first != vb[i].first || !(va[i].second == vb[i].second)) return false;
    const auto& fa = a.sig->user_functions();
    const auto& fb = b.sig->user_functions();
    if (fa.size() != fb.size()) return false;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        if (fa[i].name != fb[i].name || !(fa[i].result == fb[i].result)) return false;
        if (fa[i].params.size() != fb[i].params.size()) return false;
        for (std::size_t j = 0; j < fa[i].params.size(); ++j)
            if (fa[i].params[j].first != fb[i].params[j].first ||
                !(fa[i].params[j].second == fb[i].params[j].second))
                return false;
        bool ha = fa[i].wd_condition != nullptr, hb = fb[i].wd_condition != nullptr;
        if (ha != hb) return false;
        if (ha && !fa[i].wd_condition->equals(*fb[i].wd_condition)) return false;
    }
    if (a.rules.size() != b.rules.size()) return false;
    for (std::size_t i = 0; i < a.rules.size(); ++i) {
        const auto& ra = *a.rules[i];
        const auto& rb = *b.rules[i];
        if (ra.name != rb.name || ra.automatic != rb.automatic) return false;
        if (!ra.lhs->equals(*rb.lhs)) return false;
        if (ra.cases.size() != rb.cases.size()) return false;
        for (std::size_t j = 0; j < ra.cases.size(); ++j)
            if (!ra.cases[j].condition->equals(*rb.cases[j].condition) ||
                !ra.cases[j].rhs->equals(*rb.cases[j].rhs))
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

static Json theory_to_json(const Theory& t) {
    Json j;
    j["name"] = t.name;
    j["sets"] = t.sig->given_sets();
    Json metas = Json::array();
    for (const auto& [n, ty] : t.sig->variables())
        metas.push_back(Json{{"name", n}, {"type", ty.str()}});
    j["metavariables"] = std::move(metas);
    Json ops = Json::array();
    for (const auto& uf : t.sig->user_functions()) {
        Json params = Json::array();
        for (const auto& [pn, pt] : uf.params)
            params.push_back(Json{{"name", pn}, {"type", pt.str()}});
        Json op{{"name", uf.name}, {"params", std::move(params)}, {"result", uf.result.str()}};
        op["wd"] = uf.wd_condition ? Json(print_formula(uf.wd_condition)) : Json(nullptr);
        ops.push_back(std::move(op));
    }
    j["operators"] = std::move(ops);
    Json rules = Json::array();
    for (const auto& g : t.rules) {
        Json cases = Json::array();
        for (const auto& c : g->cases)
            cases.push_back(
                Json{{"condition", print_formula(c.condition)}, {"rhs", print_term(c.rhs)}});
        rules.push_back(Json{{"name", g->name},
                             {"automatic", g->automatic},
                             {"lhs", print_term(g->lhs)},
                             {"cases", std::move(cases)},
                             {"flags",
                              Json{{"unconditional", g->unconditional},
                                   {"case_complete", g->case_complete},
                                   {"top_level_conditions_wd", g->top_level_conditions_wd}}}});
    }
    j["rules"] = std::move(rules);
    return j;
}

Json report_to_json(const ObligationReport& report) {
    Json out;
    out["bounds"] = bounds_to_json(report.bounds);
    Json items = Json::array();
    for (const auto& po : report.items) {
        Json row{{"rule", po.rule_name},
                 {"case", po.case_index},
                 {"kind", po_kind_name(po.kind)},
                 {"sequent", po.sig ? Sequent(po.sig, po.hyps, po.goal).str() : ""}};
        switch (po.status) {
        case ProofObligation::Status::Discharged:
            row["status"] = "discharged";
            row["confidence"] = po.confidence;
            break;
        case ProofObligation::Status::Refuted:
            row["status"] = "refuted";
            row["counterexample"] = interpretation_to_json(*po.counterexample);
            break;
        case ProofObligation::Status::Pending:
            row["status"] = "pending";
            row["reason"] = po.pending_reason;
            break;
        }
        if (po.wd_companion)
            row["sequent_wd"] =
                po.wd_companion->status == ProofObligation::Status::Discharged ? "discharged"
                                                                               : "pending";
        items.push_back(std::move(row));
    }
    out["obligations"] = std::move(items);
    return out;
}

// ---------------------------------------------------------------------------
// Deployment
// ---------------------------------------------------------------------------

DeployedTheory deploy(const Theory& t, const ObligationReport& report, const std::string& dir,
                      const Bounds& bounds) {
    DeployedTheory d;
    d.bounds = bounds;
    d.report = report;
    d.theory.name = t.name;
    d.theory.sig = t.sig;

    std::vector<std::string> pending;
    for (const auto& po : report.items) {
        if ((po.kind == POKind::Validity || po.kind == POKind::WDPreservation) &&
            po.status == ProofObligation::Status::Pending)
            pending.push_back(po.str() + " (" + po.pending_reason + ")");
    }
    if (!pending.empty()) {
        std::string msg = "cannot deploy with pending mandatory obligations:";
        for (const auto& p : pending) msg += "\n  " + p;
        throw error(msg);
    }

    for (const auto& g : t.rules) {
        if (report.rule_deployable(g->name)) {
            d.theory.rules.push_back(g);
        } else {
            std::string why;
            for (const auto& po : report.items)
                if (po.rule_name == g->name && po.status == ProofObligation::Status::Refuted &&
                    (po.kind == POKind::Validity || po.kind == POKind::WDPreservation))
                    why += (why.empty() ? "" : "; ") + po_kind_name(po.kind) + " refuted";
            if (why.empty()) why = "mandatory obligations not discharged";
            d.excluded.push_back(g->name + ": " + why);
        }
    }

    Json j;
    j["format"] = "wdrew-theory-v1";
    j["theory"] = theory_to_json(d.theory);
    Json soundness = report_to_json(report);
    soundness["excluded"] = d.excluded;
    j["soundness"] = std::move(soundness);

    std::string payload = j.dump(2) + "\n";
    d.hash = content_hash(payload);

    fs::create_directories(dir);
    d.path = (fs::path(dir) / (t.name + ".thy.json")).string();
    write_file(d.path, payload);
    write_file(d.path + ".hash", d.hash + "\n");
    return d;
}

Json deployed_to_json(const DeployedTheory& d) {
    Json j;
    j["format"] = "wdrew-theory-v1";
    j["theory"] = theory_to_json(d.theory);
    Json soundness = report_to_json(d.report);
    soundness["excluded"] = d.excluded;
    j["soundness"] = std::move(soundness);
    return j;
}

LoadResult load_deployed(const std::string& dir) {
    LoadResult result;
    if (!fs::exists(dir)) return result;
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json" &&
            entry.path().stem().extension() == ".thy")
            files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        std::string payload = read_file(file);
        std::string want;
        try {
            want = read_file(file + ".hash");
        } catch (const io_error&) {
            result.stale.push_back(fs::path(file).filename().string() + " (missing hash file)");
            continue;
        }
        while (!want.empty() && (want.back() == '\n' || want.back() == '\r')) want.pop_back();
        if (content_hash(payload) != want) {
            result.stale.push_back(fs::path(file).filename().string() + " (hash mismatch)");
            continue;
        }

        Json j = Json::parse(payload);
        const Json& jt = j.at("theory");
        DeployedTheory d;
        d.path = file;
        d.hash = want;
        d.theory.name = jt.at("name").get<std::string>();

        auto sig = std::make_shared<Signature>();
        for (const auto& s : jt.at("sets")) sig->add_given_set(s.get<std::string>());
        {
            Signature base = *sig;
            for (const auto& m : jt.at("metavariables"))
                sig->add_variable(m.at("name").get<std::string>(),
                                  parse_type(m.at("type").get<std::string>(), base));
        }
        for (const auto& op : jt.at("operators")) {
            UserFunc uf;
            uf.name = op.at("name").get<std::string>();
            Signature withParams = *sig;
            for (const auto& pr : op.at("params")) {
                Type pt = parse_type(pr.at("type").get<std::string>(), *sig);
                uf.params.emplace_back(pr.at("name").get<std::string>(), pt);
                withParams.add_variable(uf.params.back().first, pt);
            }
            uf.result = parse_type(op.at("result").get<std::string>(), *sig);
            if (!op.at("wd").is_null())
                uf.wd_condition = parse_formula(op.at("wd").get<std::string>(), withParams);
            sig->add_function(std::move(uf));
        }
        d.theory.sig = sig;

        for (const auto& jr : jt.at("rules")) {
            auto g = std::make_shared<GroupedRule>();
            g->name = jr.at("name").get<std::string>();
            g->automatic = jr.at("automatic").get<bool>();
            g->lhs = parse_term(jr.at("lhs").get<std::string>(), *sig);
            for (const auto& jc : jr.at("cases"))
                g->cases.push_back({parse_formula(jc.at("condition").get<std::string>(), *sig),
                                    parse_term(jc.at("rhs").get<std::string>(), *sig)});
            const Json& flags = jr.at("flags");
            g->unconditional = flags.at("unconditional").get<bool>();
            g->case_complete = flags.at("case_complete").get<bool>();
            g->top_level_conditions_wd = flags.at("top_level_conditions_wd").get<bool>();
            g->lhs_is_variable = g->lhs->kind() == Term::Kind::Var;
            g->validate();
            d.theory.rules.push_back(std::move(g));
        }

        const Json& js = j.at("soundness");
        d.bounds = bounds_from_json(js.at("bounds"));
        d.report.bounds = d.bounds;
        for (const auto& row : js.at("obligations")) {
            ProofObligation po;
            po.rule_name = row.at("rule").get<std::string>();
            po.case_index = row.at("case").get<int>();
            std::string kind = row.at("kind").get<std::string>();
            if (kind == "validity") po.kind = POKind::Validity;
            else if (kind == "wd-preservation") po.kind = POKind::WDPreservation;
            else if (kind == "case-complete") po.kind = POKind::CaseComplete;
            else if (kind == "top-level-conditions-wd") po.kind = POKind::TopLevelCondWD;
            else po.kind = POKind::SequentWD;
            std::string status = row.at("status").get<std::string>();
            if (status == "discharged") {
                po.status = ProofObligation::Status::Discharged;
                po.confidence = row.at("confidence").get<std::string>();
            } else if (status == "refuted") {
                po.status = ProofObligation::Status::Refuted;
                po.counterexample = interpretation_from_json(row.at("counterexample"));
            } else {
                po.status = ProofObligation::Status::Pending;
                po.pending_reason = row.value("reason", "");
            }
            d.report.items.push_back(std::move(po));
        }
        for (const auto& e : js.at("excluded")) d.excluded.push_back(e.get<std::string>());

        // soundness records are authoritative, but flags must be consistent
        for (const auto& g : d.theory.rules) {
            if (g->case_complete) {
                bool ok = false;
                for (const auto& po : d.report.items)
                    if (po.rule_name == g->name && po.kind == POKind::CaseComplete &&
                        po.status == ProofObligation::Status::Discharged)
                        ok = true;
                if (!ok)
                    throw error("deployed rule " + g->name +
                                " is flagged case-complete without a discharged obligation");
            }
        }
        result.theories.push_back(std::move(d));
    }
    return result;
}

} // namespace wdrew
