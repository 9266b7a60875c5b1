#include "repl.hpp"

#include <iostream>
#include <memory>
#include <sstream>

#include "wdrew/parser.hpp"
#include "wdrew/printer.hpp"
#include "wdrew/proof.hpp"
#include "wdrew/proof_io.hpp"

namespace wdrew {

namespace {

// mutable proof tree under construction
struct PNode {
    Sequent seq;
    bool closed = false;
    RuleId rule = RuleId::Hyp;
    RuleParams params;
    std::optional<Bounds> bounds;
    std::vector<std::shared_ptr<PNode>> kids;

    explicit PNode(Sequent s) : seq(std::move(s)) {}

    std::shared_ptr<PNode> clone() const {
        auto n = std::make_shared<PNode>(seq);
        n->closed = closed;
        n->rule = rule;
        n->params = params;
        n->bounds = bounds;
        for (const auto& k : kids) n->kids.push_back(k->clone());
        return n;
    }
};

using PNodePtr = std::shared_ptr<PNode>;

PNodePtr first_open(const PNodePtr& n) {
    if (!n->closed) return n;
    for (const auto& k : n->kids)
        if (auto o = first_open(k)) return o;
    return nullptr;
}

void collect_open(const PNodePtr& n, std::vector<PNodePtr>& out) {
    if (!n->closed) {
        out.push_back(n);
        return;
    }
    for (const auto& k : n->kids) collect_open(k, out);
}

ProofTreePtr freeze(const PNodePtr& n) {
    if (!n->closed) throw error("open goals remain");
    std::vector<ProofTreePtr> kids;
    for (const auto& k : n->kids) kids.push_back(freeze(k));
    return ProofTree::make(n->seq, n->rule, n->params, std::move(kids), n->bounds);
}

void print_partial(const PNodePtr& n, int depth, std::ostream& out) {
    std::string ind(static_cast<std::size_t>(depth) * 2, ' ');
    out << ind << "seq: " << n->seq.str() << "\n";
    if (n->closed) {
        out << ind << "rule: " << rule_name(n->rule) << "\n";
        for (const auto& k : n->kids) print_partial(k, depth + 1, out);
    } else {
        out << ind << "rule: OPEN\n";
    }
}

void adopt(PNodePtr& leaf, const ProofTreePtr& t) {
    leaf->closed = true;
    leaf->rule = t->rule;
    leaf->params = t->params;
    leaf->bounds = t->oracle_bounds;
    leaf->kids.clear();
    for (const auto& c : t->children) {
        auto k = std::make_shared<PNode>(c->conclusion);
        adopt(k, c);
        leaf->kids.push_back(k);
    }
}

struct Session {
    std::ostream& out;
    const std::vector<DeployedTheory>& theories;
    Bounds bounds;

    std::shared_ptr<Signature> sig = std::make_shared<Signature>();
    std::vector<FormulaPtr> pending_hyps;
    PNodePtr root;
    std::vector<PNodePtr> undo_stack;
    std::vector<Application> apps;
    bool had_error = false;

    std::vector<GroupedRulePtr> rules() const {
        std::vector<GroupedRulePtr> out_rules;
        for (const auto& d : theories)
            for (const auto& g : d.theory.rules) out_rules.push_back(g);
        return out_rules;
    }

    ProofContext context() const {
        ProofContext ctx;
        ctx.sig = sig;
        for (const auto& g : rules()) ctx.rules.emplace(g->name, g);
        return ctx;
    }

    void snapshot() {
        if (root) undo_stack.push_back(root->clone());
    }

    void show_open() {
        std::vector<PNodePtr> open;
        collect_open(root, open);
        if (open.empty()) {
            out << "no open goals\n";
            return;
        }
        out << "open goals:\n";
        for (std::size_t i = 0; i < open.size(); ++i)
            out << "  " << i + 1 << ": " << open[i]->seq.str() << "\n";
    }

    void cmd_goal(const std::string& text) {
        FormulaPtr g = parse_formula(text, *sig);
        root = std::make_shared<PNode>(Sequent(sig, pending_hyps, g));
        undo_stack.clear();
        apps.clear();
        out << "proving: " << root->seq.str() << "\n";
    }

    void need_root() const {
        if (!root) throw error("no goal yet; use 'goal <formula>'");
    }

    void cmd_apps() {
        need_root();
        PNodePtr open = first_open(root);
        if (!open) throw error("no open goals");
        apps = find_applications(rules(), open->seq);
        if (apps.empty()) {
            out << "no applicable rules\n";
            return;
        }
        out << "applicable rules:\n";
        for (std::size_t i = 0; i < apps.size(); ++i)
            out << "  " << i + 1 << ": " << apps[i].str() << "\n";
    }

    void cmd_apply(const std::string& arg) {
        need_root();
        PNodePtr open = first_open(root);
        if (!open) throw error("no open goals");
        if (apps.empty()) apps = find_applications(rules(), open->seq);
        std::size_t n = 0;
        try {
            n = std::stoul(arg);
        } catch (...) {
            throw error("apply takes the number of an application from 'apps'");
        }
        if (n == 0 || n > apps.size())
            throw error("no application " + arg + "; run 'apps' to list them");
        const Application& app = apps[n - 1];
        RuleParams params;
        params.app = std::make_shared<Application>(app);
        RuleId id = app.targets_goal() ? RuleId::RewriteGoal : RuleId::RewriteHyp;
        auto premises = apply_rule(open->seq, id, params);
        snapshot();
        open->closed = true;
        open->rule = id;
        open->params = params;
        for (const auto& p : premises) open->kids.push_back(std::make_shared<PNode>(p));
        out << "applied " << app.str() << "\n";
        apps.clear();
        show_open();
    }

    void cmd_rule(const std::string& arg) {
        need_root();
        PNodePtr open = first_open(root);
        if (!open) throw error("no open goals");
        std::istringstream is(arg);
        std::string name;
        is >> name;
        auto id = rule_from_name(name);
        if (!id || *id == RuleId::OracleClose || *id == RuleId::RewriteHyp ||
            *id == RuleId::RewriteGoal)
            throw error("unknown kernel rule '" + name + "'");
        std::string paramtext;
        std::getline(is, paramtext);
        // reuse the proof-text parameter syntax: hyp=N P='...' E='...' x=v
        ProofContext ctx = context();
        auto parse_params = [&](const std::string& text) {
            std::map<std::string, std::string> kv;
            std::size_t i = 0;
            while (i < text.size()) {
                while (i < text.size() && text[i] == ' ') ++i;
                if (i >= text.size()) break;
                auto eq = text.find('=', i);
                if (eq == std::string::npos) throw error("parameters look like key=value");
                std::string key = text.substr(i, eq - i);
                i = eq + 1;
                std::string value;
                if (i < text.size() && text[i] == '\'') {
                    auto close = text.find('\'', i + 1);
                    if (close == std::string::npos) throw error("unterminated quote");
                    value = text.substr(i + 1, close - i - 1);
                    i = close + 1;
                } else {
                    auto end = text.find(' ', i);
                    if (end == std::string::npos) end = text.size();
                    value = text.substr(i, end - i);
                    i = end;
                }
                kv[key] = value;
            }
            return kv;
        };
        auto kv = parse_params(paramtext);
        RuleParams params;
        if (kv.count("hyp")) params.hyp_index = std::stoul(kv["hyp"]) - 1;
        if (kv.count("x")) params.var = kv["x"];
        if (kv.count("P")) {
            if (*id == RuleId::EqHyp) {
                if (!params.hyp_index) throw error("eqHyp needs hyp=N");
                if (*params.hyp_index >= open->seq.hyps().size())
                    throw error("hypothesis index out of range");
                const FormulaPtr& h = open->seq.hyps()[*params.hyp_index];
                if (h->kind() != Formula::Kind::Equal)
                    throw error("eqHyp: hypothesis is not an equality");
                Signature with_x =
                    open->seq.sig()->with_variable(params.var, h->term_args()[0]->type());
                params.formula = parse_formula(kv["P"], with_x);
            } else {
                params.formula = parse_formula(kv["P"], *open->seq.sig());
            }
        }
        if (kv.count("E")) params.term = parse_term(kv["E"], *open->seq.sig());
        std::vector<Sequent> premises = apply_rule(open->seq, *id, params);
        snapshot();
        open->closed = true;
        open->rule = *id;
        open->params = params;
        for (const auto& p : premises) open->kids.push_back(std::make_shared<PNode>(p));
        out << "applied " << name << "\n";
        apps.clear();
        show_open();
    }

    void cmd_auto() {
        need_root();
        std::vector<PNodePtr> open;
        collect_open(root, open);
        if (open.empty()) throw error("no open goals");
        snapshot();
        std::size_t closed = 0;
        for (auto& leaf : open) {
            DischargeOutcome o = auto_discharge(leaf->seq, bounds);
            if (!o.ok()) {
                out << "auto failed on '" << leaf->seq.str() << "': " << o.failure_reason << "\n";
                had_error = true;
                return;
            }
            adopt(leaf, o.tree);
            ++closed;
        }
        out << "auto closed " << closed << " goal(s)\n";
        apps.clear();
    }

    void cmd_tree() {
        need_root();
        print_partial(root, 0, out);
    }

    void cmd_undo() {
        need_root();
        if (undo_stack.empty()) throw error("nothing to undo");
        root = undo_stack.back();
        undo_stack.pop_back();
        apps.clear();
        out << "undone\n";
        show_open();
    }

    void cmd_qed() {
        need_root();
        std::vector<PNodePtr> open;
        collect_open(root, open);
        if (!open.empty())
            throw error(std::to_string(open.size()) + " open goal(s) remain");
        ProofTreePtr t = freeze(root);
        CheckTreeResult r = check_tree(t);
        if (!r.accepted) {
            had_error = true;
            out << "qed rejected: " << r.str() << "\n";
            return;
        }
        out << "proof complete (" << r.confidence << " confidence)\n";
    }

    void dispatch(const std::string& line) {
        std::istringstream is(line);
        std::string cmd;
        is >> cmd;
        std::string rest;
        std::getline(is, rest);
        while (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);

        if (cmd == "set") {
            if (root) throw error("declare sets before 'goal'");
            sig->add_given_set(rest);
            out << "set " << rest << " declared\n";
        } else if (cmd == "var") {
            if (root) throw error("declare variables before 'goal'");
            auto colon = rest.find(':');
            if (colon == std::string::npos) throw error("usage: var NAME : TYPE");
            std::string name = rest.substr(0, colon);
            std::string tname = rest.substr(colon + 1);
            while (!name.empty() && name.back() == ' ') name.pop_back();
            sig->add_variable(name, parse_type(tname, *sig));
            out << "var " << name << " declared\n";
        } else if (cmd == "hyps") {
            if (root) throw error("declare hypotheses before 'goal'");
            pending_hyps.clear();
            if (!rest.empty()) {
                Parser p(tokenize(rest), *sig);
                while (true) {
                    pending_hyps.push_back(p.parse_formula());
                    if (p.accept(Tok::Semi)) continue;
                    break;
                }
                if (!p.at_end()) p.fail("unexpected input after hypotheses");
            }
            out << pending_hyps.size() << " hypothesis(es) set\n";
        } else if (cmd == "goal") {
            cmd_goal(rest);
        } else if (cmd == "apps") {
            cmd_apps();
        } else if (cmd == "apply") {
            cmd_apply(rest);
        } else if (cmd == "rule") {
            cmd_rule(rest);
        } else if (cmd == "auto") {
            cmd_auto();
        } else if (cmd == "tree") {
            cmd_tree();
        } else if (cmd == "json") {
            need_root();
            std::vector<PNodePtr> open;
            collect_open(root, open);
            if (!open.empty()) throw error("tree is not complete");
            out << tree_to_json(freeze(root)).dump(2) << "\n";
        } else if (cmd == "undo") {
            cmd_undo();
        } else if (cmd == "qed") {
            cmd_qed();
        } else {
            throw error("unknown command '" + cmd + "'");
        }
    }
};

} // namespace

int run_repl(std::istream& in, std::ostream& out, const std::vector<DeployedTheory>& theories,
             const Bounds& bounds, bool echo) {
    Session s{out, theories, bounds};
    std::size_t nrules = 0;
    for (const auto& d : theories) nrules += d.theory.rules.size();
    out << "wdrew proof shell: " << theories.size() << " theory(ies), " << nrules
        << " rule(s) loaded\n";
    std::string line;
    while (true) {
        if (!echo) out << "wdrew> " << std::flush;
        if (!std::getline(in, line)) break;
        // strip comments and whitespace
        auto hash = line.find("//");
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
        std::size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        line = line.substr(start);
        if (echo) out << "> " << line << "\n";
        if (line == "quit" || line == "exit") break;
        try {
            s.dispatch(line);
        } catch (const error& e) {
            s.had_error = true;
            out << "error: " << e.what() << "\n";
        }
    }
    return s.had_error ? 1 : 0;
}

} // namespace wdrew
