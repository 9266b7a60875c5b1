#pragma once

#include <string>

#include "wdrew/ast.hpp"

namespace wdrew {

// Canonical ASCII rendering; parse(print(x)) == x for every well-typed AST.
std::string print_term(const TermPtr& t);
std::string print_formula(const FormulaPtr& f);
std::string print_node(const Node& n);

} // namespace wdrew
