#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wdrew/oracle.hpp"
#include "wdrew/theory.hpp"

namespace wdrew {

// Interactive proof session over the deployed rules. Reads commands from
// `in`, writes every response to `out`; when `echo` is set each command line
// is echoed with a "> " prefix so transcripts replay byte-identically.
// Returns 0 when no command failed, 1 otherwise.
int run_repl(std::istream& in, std::ostream& out, const std::vector<DeployedTheory>& theories,
             const Bounds& bounds, bool echo);

} // namespace wdrew
