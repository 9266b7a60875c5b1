#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wdrew/obligations.hpp"
#include "wdrew/rewrite.hpp"
#include "wdrew/serialize.hpp"
#include "wdrew/signature.hpp"

namespace wdrew {

// A theory: given sets, typed metavariables, optional operator declarations
// with wd clauses, and rewrite rules grouped by left-hand side.
struct Theory {
    std::string name;
    SignaturePtr sig; // sets + metavariables + operators
    std::vector<std::shared_ptr<GroupedRule>> rules;
    std::vector<std::string> warnings; // e.g. variable left-hand sides

    std::vector<GroupedRulePtr> rule_views() const;
};

// Parses the theory grammar:
//
//   theory NAME
//     sets S, T
//     metavariables i : INT ; s : POW(INT)
//     operators f(a : INT) : INT wd a /= 0 ;
//     rewrite
//       rule NAME : LHS -> auto { COND : RHS ; ... }
//   end
//
// Rules with identical left-hand sides (up to metavariable renaming) are
// grouped automatically. Rewrite-rule restrictions are enforced: variables
// of conditions and right-hand sides must occur in the left-hand side
// (hard errors); a variable left-hand side is kept but flagged, since such
// an identity can be analysed but never applied.
Theory parse_theory(const std::string& text);
Theory parse_theory_file(const std::string& path);

std::string print_theory(const Theory& t);

bool theories_equal(const Theory& a, const Theory& b);

// ---------------------------------------------------------------------------
// Deployment
// ---------------------------------------------------------------------------

struct DeployedTheory {
    Theory theory; // deployable rules only, flags persisted
    Bounds bounds;
    ObligationReport report;
    std::vector<std::string> excluded; // "rule: reason"
    std::string hash;
    std::string path;
};

// Writes `<dir>/<name>.thy.json` plus a detached `.hash` file. Rules whose
// validity or WD-preservation obligations are not discharged are excluded
// from the artifact and listed. Throws if a mandatory obligation is still
// pending (refuted rules are excluded, pending ones block deployment).
DeployedTheory deploy(const Theory& t, const ObligationReport& report, const std::string& dir,
                      const Bounds& bounds);

struct LoadResult {
    std::vector<DeployedTheory> theories;
    std::vector<std::string> stale; // file names whose hash does not match
};

// Loads every deployed theory in the directory, verifying content hashes.
// Stale artifacts are reported, not loaded; soundness records are taken at
// face value (no re-validation).
LoadResult load_deployed(const std::string& dir);

Json report_to_json(const ObligationReport& report);
Json deployed_to_json(const DeployedTheory& d);

} // namespace wdrew
