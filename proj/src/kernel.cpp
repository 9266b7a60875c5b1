#include "wdrew/kernel.hpp"

#include <sstream>

#include "wdrew/printer.hpp"

namespace wdrew {

Sequent::Sequent(SignaturePtr sig, std::vector<FormulaPtr> hyps, FormulaPtr goal)
    : sig_(std::move(sig)), hyps_(std::move(hyps)), goal_(std::move(goal)) {
    if (!sig_) throw error("sequent requires a signature");
    if (!goal_) throw error("sequent requires a goal");
    auto check = [&](const FormulaPtr& f) {
        for (auto& [name, type] : free_vars_ordered(Node(f))) {
            auto declared = sig_->variable_type(name);
            if (!declared)
                throw type_error("free variable '" + name + "' is not declared in the signature");
            if (!(*declared == type))
                throw type_error("variable '" + name + "' used at type " + type.str() +
                                 " but declared " + declared->str());
        }
    };
    for (const auto& h : hyps_) check(h);
    check(goal_);
}

Sequent Sequent::with_goal(FormulaPtr g) const { return Sequent(sig_, hyps_, std::move(g)); }

Sequent Sequent::with_hyps(std::vector<FormulaPtr> hs) const {
    return Sequent(sig_, std::move(hs), goal_);
}

Sequent Sequent::with_extra_hyp(FormulaPtr h) const {
    auto hs = hyps_;
    hs.push_back(std::move(h));
    return Sequent(sig_, std::move(hs), goal_);
}

Sequent Sequent::without_hyp(std::size_t index) const {
    if (index >= hyps_.size()) throw error("hypothesis index out of range");
    auto hs = hyps_;
    hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(index));
    return Sequent(sig_, std::move(hs), goal_);
}

bool Sequent::equals(const Sequent& o) const {
    if (hyps_.size() != o.hyps_.size()) return false;
    for (std::size_t i = 0; i < hyps_.size(); ++i)
        if (!hyps_[i]->equals(*o.hyps_[i])) return false;
    return goal_->equals(*o.goal_);
}

std::string Sequent::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < hyps_.size(); ++i) {
        if (i) os << " ; ";
        os << print_formula(hyps_[i]);
    }
    if (!hyps_.empty()) os << ' ';
    os << "|- " << print_formula(goal_);
    return os.str();
}

} // namespace wdrew
