#pragma once

#include <stdexcept>
#include <string>

namespace wdrew {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lexical or grammatical problem in an input file; carries a 1-based location.
struct parse_error : error {
    int line;
    int col;
    parse_error(const std::string& msg, int line_, int col_)
        : error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

struct type_error : error {
    using error::error;
};

// Substitution would move a free variable under a binder of the same name.
struct capture_error : error {
    using error::error;
};

struct position_error : error {
    using error::error;
};

// A kernel rule schema does not apply to the given sequent, or a side
// condition is violated.
struct schema_error : error {
    using error::error;
};

// A rewrite application violates one of its provisos.
struct proviso_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

} // namespace wdrew
