#include "tickmc/lexer.hpp"

#include <cctype>

namespace tickmc {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::vector<Token> tokenize(std::string_view source, const std::string& filename,
                            DiagnosticBag& diagnostics) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  int line = 1;
  int column = 1;

  auto span_here = [&](int length) {
    return SourceSpan{filename, line, column, length};
  };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < source.size(); ++k) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  auto push = [&](TokenKind kind, std::size_t length) {
    tokens.push_back({kind, std::string(source.substr(i, length)), span_here(static_cast<int>(length))});
    advance(length);
  };

  // Skip a UTF-8 byte-order mark if present.
  if (source.size() >= 3 && static_cast<unsigned char>(source[0]) == 0xEF &&
      static_cast<unsigned char>(source[1]) == 0xBB &&
      static_cast<unsigned char>(source[2]) == 0xBF) {
    i = 3;
  }

  while (i < source.size()) {
    char c = source[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    if (ident_start(c)) {
      std::size_t len = 1;
      while (i + len < source.size() && ident_char(source[i + len])) ++len;
      push(TokenKind::identifier, len);
      continue;
    }
    if (digit(c)) {
      std::size_t len = 1;
      while (i + len < source.size() && digit(source[i + len])) ++len;
      if (i + len < source.size() && source[i + len] == '.' && i + len + 1 < source.size() &&
          digit(source[i + len + 1])) {
        ++len;
        while (i + len < source.size() && digit(source[i + len])) ++len;
      }
      push(TokenKind::number, len);
      continue;
    }
    auto two = [&](char second) {
      return i + 1 < source.size() && source[i + 1] == second;
    };
    switch (c) {
      case '{': push(TokenKind::lbrace, 1); continue;
      case '}': push(TokenKind::rbrace, 1); continue;
      case '[': push(TokenKind::lbracket, 1); continue;
      case ']': push(TokenKind::rbracket, 1); continue;
      case '(': push(TokenKind::lparen, 1); continue;
      case ')': push(TokenKind::rparen, 1); continue;
      case ',': push(TokenKind::comma, 1); continue;
      case ';': push(TokenKind::semicolon, 1); continue;
      case '+': push(TokenKind::plus, 1); continue;
      case '-': push(TokenKind::minus, 1); continue;
      case '*': push(TokenKind::star, 1); continue;
      case ':':
        if (two(':')) {
          push(TokenKind::coloncolon, 2);
        } else if (two('=')) {
          push(TokenKind::assign, 2);
        } else {
          push(TokenKind::colon, 1);
        }
        continue;
      case '=':
        if (two('=')) {
          push(TokenKind::eqeq, 2);
        } else if (two('?')) {
          push(TokenKind::prob_query, 2);
        } else {
          push(TokenKind::eq, 1);
        }
        continue;
      case '!':
        if (two('=')) {
          push(TokenKind::neq, 2);
          continue;
        }
        diagnostics.error("unexpected character '!'", span_here(1));
        advance(1);
        continue;
      case '<':
        if (two('=')) {
          push(TokenKind::le, 2);
          continue;
        }
        diagnostics.error("unexpected character '<'", span_here(1));
        advance(1);
        continue;
      case '/':
        if (two('\\')) {
          push(TokenKind::pred_and, 2);
        } else {
          push(TokenKind::slash, 1);
        }
        continue;
      default:
        diagnostics.error("unexpected character", span_here(1));
        advance(1);
        continue;
    }
  }
  tokens.push_back({TokenKind::end_of_file, "", span_here(0)});
  return tokens;
}

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::number: return "number";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::lbracket: return "'['";
    case TokenKind::rbracket: return "']'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::comma: return "','";
    case TokenKind::semicolon: return "';'";
    case TokenKind::colon: return "':'";
    case TokenKind::coloncolon: return "'::'";
    case TokenKind::assign: return "':='";
    case TokenKind::eq: return "'='";
    case TokenKind::eqeq: return "'=='";
    case TokenKind::neq: return "'!='";
    case TokenKind::le: return "'<='";
    case TokenKind::prob_query: return "'=?'";
    case TokenKind::pred_and: return "'/\\'";
    case TokenKind::plus: return "'+'";
    case TokenKind::minus: return "'-'";
    case TokenKind::star: return "'*'";
    case TokenKind::slash: return "'/'";
    case TokenKind::end_of_file: return "end of file";
  }
  return "token";
}

}  // namespace tickmc
