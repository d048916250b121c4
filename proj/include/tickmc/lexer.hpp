// Token stream shared by the model, property and config parsers.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tickmc/diagnostics.hpp"

namespace tickmc {

enum class TokenKind {
  identifier,
  number,      // digits with optional fraction, e.g. 10 or 0.091
  lbrace,      // {
  rbrace,      // }
  lbracket,    // [
  rbracket,    // ]
  lparen,      // (
  rparen,      // )
  comma,       // ,
  semicolon,   // ;
  colon,       // :
  coloncolon,  // ::
  assign,      // :=
  eq,          // =
  eqeq,        // ==
  neq,         // !=
  le,          // <=
  prob_query,  // =?
  pred_and,    // /\ (conjunction in property predicates)
  plus,        // +
  minus,       // -
  star,        // *
  slash,       // /
  end_of_file,
};

struct Token {
  TokenKind kind = TokenKind::end_of_file;
  std::string text;
  SourceSpan span;
};

// Tokenizes the full input.  Total: malformed characters produce diagnostics
// and are skipped, and the result always ends with an end_of_file token.
std::vector<Token> tokenize(std::string_view source, const std::string& filename,
                            DiagnosticBag& diagnostics);

const char* token_kind_name(TokenKind kind);

}  // namespace tickmc
