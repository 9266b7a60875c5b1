#pragma once

#include <string>
#include <vector>

#include "wdrew/ast.hpp"
#include "wdrew/signature.hpp"

namespace wdrew {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
    Ident, Number, LParen, RParen, LBrace, RBrace, Comma, Semi, Colon, Dot,
    Range,      // ..
    Maplet,     // |->
    Turnstile,  // |-
    Arrow,      // ->
    Plus, Minus, Star, Slash, StarStar,
    Union, Inter, Backslash,             // set operators
    Eq, Neq, Le, Lt, Ge, Gt,
    Amp, OrKw, NotKw, Implies, Iff, Bang, Hash, InKw, TrueKw, FalseKw,
    End
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

// Tokenizes ASCII input; common mathematical Unicode operators are accepted
// and mapped to their ASCII spelling. Comments run from '//' to end of line.
std::vector<Token> tokenize(const std::string& text);

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

// Recursive-descent parser over a token vector. Formula and term parsing
// typecheck as they go: empty-set and enumeration literals get their element
// types by unification, every other symbol is checked against its declared
// scheme. The theory parser reuses this class for embedded formulas.
class Parser {
public:
    Parser(std::vector<Token> toks, const Signature& sig);

    FormulaPtr parse_formula_all(); // consumes the whole stream
    TermPtr parse_term_all();
    Type parse_type_all();

    FormulaPtr parse_formula();
    TermPtr parse_term();
    Type parse_type();

    const Token& peek() const;
    Token next();
    bool at(Tok k) const;
    bool accept(Tok k);
    Token expect(Tok k, const std::string& what);
    bool at_end() const;
    std::size_t offset() const;           // tokens consumed so far
    std::vector<Token> remaining() const; // unconsumed tail (End included)
    [[noreturn]] void fail(const std::string& msg) const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

FormulaPtr parse_formula(const std::string& text, const Signature& sig);
TermPtr parse_term(const std::string& text, const Signature& sig);
Type parse_type(const std::string& text, const Signature& sig);

} // namespace wdrew
