#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wdrew/ast.hpp"
#include "wdrew/signature.hpp"

namespace wdrew {

// The judgement H |- G, always read well-definedly: D(H), D(G), H |- G.
// Hypotheses are an ordered list; rules that match a hypothesis accept any
// element (set semantics for matching, stable order for printing).
class Sequent {
public:
    Sequent(SignaturePtr sig, std::vector<FormulaPtr> hyps, FormulaPtr goal);

    const SignaturePtr& sig() const { return sig_; }
    const std::vector<FormulaPtr>& hyps() const { return hyps_; }
    const FormulaPtr& goal() const { return goal_; }

    Sequent with_goal(FormulaPtr g) const;
    Sequent with_hyps(std::vector<FormulaPtr> hs) const;
    Sequent with_extra_hyp(FormulaPtr h) const; // appended
    Sequent without_hyp(std::size_t index) const;

    bool equals(const Sequent& o) const; // formulas only
    std::string str() const;

private:
    SignaturePtr sig_;
    std::vector<FormulaPtr> hyps_;
    FormulaPtr goal_;
};

} // namespace wdrew
