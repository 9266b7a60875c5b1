#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "repl.hpp"
#include "wdrew/obligations.hpp"
#include "wdrew/parser.hpp"
#include "wdrew/printer.hpp"
#include "wdrew/proof_io.hpp"
#include "wdrew/serialize.hpp"
#include "wdrew/theory.hpp"

using namespace wdrew;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;  // refuted or failed obligations / steps
constexpr int kExitUsage = 2;   // usage or I/O errors

struct BoundsFlags {
    Bounds bounds;
    std::string shorthand;

    void attach(CLI::App* cmd) {
        cmd->add_option("--int-lo", bounds.int_lo, "smallest enumerated integer");
        cmd->add_option("--int-hi", bounds.int_hi, "largest enumerated integer");
        cmd->add_option("--given-size", bounds.given_size, "carrier size of given sets");
        cmd->add_option("--nesting", bounds.max_nesting, "maximum POW nesting in enumeration");
        cmd->add_option("--budget", bounds.budget, "evaluation-step budget per check");
        cmd->add_option("--bounds", shorthand, "integer window shorthand LO..HI");
    }

    Bounds resolve() const {
        Bounds b = bounds;
        if (!shorthand.empty()) {
            auto dots = shorthand.find("..");
            if (dots == std::string::npos)
                throw error("--bounds expects LO..HI, e.g. --bounds -4..4");
            b.int_lo = std::stoll(shorthand.substr(0, dots));
            b.int_hi = std::stoll(shorthand.substr(dots + 2));
        }
        return b;
    }
};

std::string status_text(const ProofObligation& po) {
    switch (po.status) {
    case ProofObligation::Status::Discharged: return "discharged (" + po.confidence + ")";
    case ProofObligation::Status::Refuted: return "REFUTED (" + po.counterexample->str() + ")";
    case ProofObligation::Status::Pending: return "pending (" + po.pending_reason + ")";
    }
    return "?";
}

void print_report_text(const Theory& t, const ObligationReport& report, std::ostream& out) {
    out << "theory " << t.name << ": " << t.rules.size() << " rule group(s)\n";
    for (const auto& w : t.warnings) out << "warning: " << w << "\n";
    for (const auto& po : report.items) {
        std::ostringstream name;
        name << po.rule_name;
        if (po.case_index >= 0) name << "[" << po.case_index + 1 << "]";
        out << "  " << name.str() << " " << po_kind_name(po.kind) << ": " << status_text(po)
            << "\n";
    }
    out << "summary: " << report.summary() << "\n";
    bool any = false;
    out << "deployable:";
    for (const auto& g : t.rules)
        if (report.rule_deployable(g->name)) {
            out << " " << g->name;
            any = true;
        }
    if (!any) out << " (none)";
    out << "\n";
}

// --- check -----------------------------------------------------------------

int cmd_check(const std::string& file, const BoundsFlags& bf, bool json) {
    Bounds bounds = bf.resolve();
    Theory t = parse_theory_file(file);
    ObligationReport report = discharge_all(t.rules, t.sig, bounds);
    if (json) {
        Json j;
        j["theory"] = t.name;
        j["warnings"] = t.warnings;
        j["report"] = report_to_json(report);
        Json dep = Json::array();
        for (const auto& g : t.rules)
            if (report.rule_deployable(g->name)) dep.push_back(g->name);
        j["deployable"] = std::move(dep);
        j["ok"] = report.all_mandatory_discharged();
        std::cout << j.dump(2) << "\n";
    } else {
        print_report_text(t, report, std::cout);
    }
    return report.all_mandatory_discharged() ? kExitOk : kExitFailed;
}

// --- deploy ------------------------------------------------------------------

int cmd_deploy(const std::string& file, const std::string& dir, const BoundsFlags& bf,
               bool with_top_level, bool json) {
    Bounds bounds = bf.resolve();
    Theory t = parse_theory_file(file);
    ObligationReport report = discharge_all(t.rules, t.sig, bounds);
    if (with_top_level)
        for (auto& g : t.rules) classify(*g, t.sig, bounds, true);
    DeployedTheory d = deploy(t, report, dir, bounds);
    if (json) {
        Json j;
        j["theory"] = t.name;
        j["path"] = d.path;
        j["hash"] = d.hash;
        j["excluded"] = d.excluded;
        j["ok"] = true;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "deployed " << t.name << " to " << d.path << "\n";
        std::cout << "  rules: " << d.theory.rules.size() << " deployed, " << d.excluded.size()
                  << " excluded\n";
        for (const auto& e : d.excluded) std::cout << "  excluded " << e << "\n";
    }
    return kExitOk;
}

// --- rewrite -----------------------------------------------------------------

struct SequentFile {
    std::shared_ptr<Signature> sig;
    std::vector<FormulaPtr> hyps;
    FormulaPtr goal;
};

SequentFile parse_sequent_file(const std::string& path,
                               const std::vector<DeployedTheory>& theories) {
    SequentFile sf;
    sf.sig = std::make_shared<Signature>();
    // operators of the loaded theories are in scope for sequents
    for (const auto& d : theories)
        for (const auto& uf : d.theory.sig->user_functions()) sf.sig->add_function(uf);
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        line = line.substr(start);
        if (line.rfind("//", 0) == 0) continue;
        if (line.rfind("set ", 0) == 0) {
            sf.sig->add_given_set(line.substr(4));
        } else if (line.rfind("var ", 0) == 0) {
            std::string rest = line.substr(4);
            auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw parse_error("variable lines look like 'var NAME : TYPE'", lineno, 1);
            std::string name = rest.substr(0, colon);
            while (!name.empty() && name.back() == ' ') name.pop_back();
            sf.sig->add_variable(name, parse_type(rest.substr(colon + 1), *sf.sig));
        } else if (line.rfind("hyp:", 0) == 0) {
            sf.hyps.push_back(parse_formula(line.substr(4), *sf.sig));
        } else if (line.rfind("goal:", 0) == 0) {
            if (sf.goal) throw parse_error("more than one goal line", lineno, 1);
            sf.goal = parse_formula(line.substr(5), *sf.sig);
        } else {
            throw parse_error("expected 'set', 'var', 'hyp:' or 'goal:'", lineno, 1);
        }
    }
    if (!sf.goal) throw error("sequent file has no 'goal:' line");
    return sf;
}

int cmd_rewrite(const std::string& file, const std::string& dir, const std::string& rule_name,
                const std::string& position, const std::string& target, bool json) {
    LoadResult loaded = load_deployed(dir);
    for (const auto& s : loaded.stale)
        std::cerr << "warning: stale deployed theory " << s << "\n";
    SequentFile sf = parse_sequent_file(file, loaded.theories);
    Sequent s(sf.sig, sf.hyps, sf.goal);

    std::vector<GroupedRulePtr> rules;
    for (const auto& d : loaded.theories)
        for (const auto& g : d.theory.rules) rules.push_back(g);
    std::vector<Application> apps = find_applications(rules, s);

    // narrow by the selection flags
    std::vector<Application> selected;
    for (const auto& a : apps) {
        if (!rule_name.empty() && a.rule->name != rule_name) continue;
        if (!position.empty() && position_str(a.pos) != position) continue;
        if (!target.empty()) {
            std::string t = a.targets_goal() ? "goal" : "hyp:" + std::to_string(a.hyp_index + 1);
            if (t != target) continue;
        }
        selected.push_back(a);
    }

    if (selected.empty()) {
        if (json) std::cout << Json{{"error", "no applicable rules"}}.dump(2) << "\n";
        else std::cout << "no applicable rules\n";
        return kExitFailed;
    }
    if (selected.size() > 1) {
        if (json) {
            Json j;
            j["error"] = "ambiguous application; select with --rule/--position/--target";
            Json cands = Json::array();
            for (const auto& a : selected) cands.push_back(a.str());
            j["candidates"] = std::move(cands);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "ambiguous application; candidates:\n";
            for (std::size_t i = 0; i < selected.size(); ++i)
                std::cout << "  " << i + 1 << ": " << selected[i].str() << "\n";
            std::cout << "select with --rule/--position/--target\n";
        }
        return kExitFailed;
    }

    const Application& app = selected[0];
    std::vector<Sequent> subgoals = rewrite_step(s, app);
    if (json) {
        Json j;
        j["applied"] = app.str();
        Json gs = Json::array();
        for (const auto& g : subgoals) gs.push_back(g.str());
        j["subgoals"] = std::move(gs);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "applying " << app.str() << "\n";
        std::cout << "subgoals:\n";
        for (std::size_t i = 0; i < subgoals.size(); ++i)
            std::cout << "  " << i + 1 << ": " << subgoals[i].str() << "\n";
    }
    return kExitOk;
}

// --- repl ----------------------------------------------------------------

int cmd_repl(const std::string& dir, const std::string& script, const BoundsFlags& bf) {
    Bounds bounds = bf.resolve();
    LoadResult loaded;
    if (!dir.empty()) loaded = load_deployed(dir);
    for (const auto& s : loaded.stale)
        std::cerr << "warning: stale deployed theory " << s << "\n";
    if (!script.empty()) {
        std::ifstream in(script);
        if (!in) throw io_error("cannot read script " + script);
        return run_repl(in, std::cout, loaded.theories, bounds, true);
    }
    return run_repl(std::cin, std::cout, loaded.theories, bounds, false);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"well-definedness preserving rewriting: theory validation and proof steps"};
    app.require_subcommand(1);

    BoundsFlags check_bounds, deploy_bounds, rewrite_bounds, repl_bounds;
    bool check_json = false, deploy_json = false, rewrite_json = false;
    bool deploy_toplevel = false;
    std::string check_file, deploy_file, deploy_dir = "deployed", rewrite_file,
                rewrite_dir = "deployed", rewrite_rule, rewrite_pos, rewrite_target, repl_dir,
                repl_script;

    auto* check = app.add_subcommand("check", "validate a theory's rewrite rules");
    check->add_option("theory", check_file, "theory file")->required();
    check_bounds.attach(check);
    check->add_flag("--json", check_json, "structured output");

    auto* dep = app.add_subcommand("deploy", "validate and deploy a theory");
    dep->add_option("theory", deploy_file, "theory file")->required();
    dep->add_option("--deploy-dir", deploy_dir, "target directory");
    dep->add_flag("--toplevel-wd", deploy_toplevel,
                  "also discharge the top-level-conditions-wd obligation and persist the flag");
    deploy_bounds.attach(dep);
    dep->add_flag("--json", deploy_json, "structured output");

    auto* rew = app.add_subcommand("rewrite", "apply a deployed rule to a sequent");
    rew->add_option("sequent", rewrite_file, "sequent file (hyp:/goal: lines)")->required();
    rew->add_option("--deploy-dir", rewrite_dir, "deployed theory directory");
    rew->add_option("--rule", rewrite_rule, "select by rule name");
    rew->add_option("--position", rewrite_pos, "select by position (e.g. 1.2)");
    rew->add_option("--target", rewrite_target, "select by target (goal or hyp:N)");
    rewrite_bounds.attach(rew);
    rew->add_flag("--json", rewrite_json, "structured output");

    auto* repl = app.add_subcommand("repl", "interactive proof shell");
    repl->add_option("--deploy-dir", repl_dir, "deployed theory directory");
    repl->add_option("--script", repl_script, "replay a transcript instead of reading stdin");
    repl_bounds.attach(repl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(check_file, check_bounds, check_json);
        if (dep->parsed())
            return cmd_deploy(deploy_file, deploy_dir, deploy_bounds, deploy_toplevel,
                              deploy_json);
        if (rew->parsed())
            return cmd_rewrite(rewrite_file, rewrite_dir, rewrite_rule, rewrite_pos,
                               rewrite_target, rewrite_json);
        if (repl->parsed()) return cmd_repl(repl_dir, repl_script, repl_bounds);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    }
    return kExitUsage;
}
