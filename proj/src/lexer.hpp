#pragma once

// Shared tokenizer for the query language and the guard/update expression
// strings in model files. Internal to the library.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "privbeh/errors.hpp"

namespace privbeh::detail {

enum class Tok {
  Ident,
  Int,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Dot,
  Comma,
  Lt,
  Le,
  Gt,
  Ge,
  EqEq,
  Ne,
  Assign,  // :=
  Colon,
  Plus,
  Minus,
  Star,
  Arrow,  // --> (recognized so it can be rejected with a clear message)
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    auto push = [&](Tok kind, std::size_t len) {
      out.push_back({kind, std::string(text.substr(start, len)), start});
      i += len;
    };
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && ident_char(text[j])) ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::Int, j - i);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, 1); break;
      case ')': push(Tok::RParen, 1); break;
      case '[': push(Tok::LBracket, 1); break;
      case ']': push(Tok::RBracket, 1); break;
      case '.': push(Tok::Dot, 1); break;
      case ',': push(Tok::Comma, 1); break;
      case '+': push(Tok::Plus, 1); break;
      case '*': push(Tok::Star, 1); break;
      case '<':
        if (i + 1 < n && text[i + 1] == '=') push(Tok::Le, 2);
        else push(Tok::Lt, 1);
        break;
      case '>':
        if (i + 1 < n && text[i + 1] == '=') push(Tok::Ge, 2);
        else push(Tok::Gt, 1);
        break;
      case '=':
        if (i + 1 < n && text[i + 1] == '=') push(Tok::EqEq, 2);
        else throw ParseError("expected '==' (single '=' is not an operator)", i);
        break;
      case '!':
        if (i + 1 < n && text[i + 1] == '=') push(Tok::Ne, 2);
        else throw ParseError("unexpected '!'", i);
        break;
      case ':':
        if (i + 1 < n && text[i + 1] == '=') push(Tok::Assign, 2);
        else push(Tok::Colon, 1);
        break;
      case '-':
        if (i + 2 < n && text[i + 1] == '-' && text[i + 2] == '>') push(Tok::Arrow, 3);
        else push(Tok::Minus, 1);
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::End, "", n});
  return out;
}

/// Case-insensitive keyword test for and/or/not/deadlock/true.
inline bool is_keyword(const Token& tok, std::string_view keyword) {
  if (tok.kind != Tok::Ident || tok.text.size() != keyword.size()) return false;
  for (std::size_t i = 0; i < keyword.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(tok.text[i])) != keyword[i]) return false;
  }
  return true;
}

/// Cursor over a token stream with the error plumbing both parsers share.
struct TokenCursor {
  std::vector<Token> tokens;
  std::size_t at = 0;

  explicit TokenCursor(std::string_view text) : tokens(tokenize(text)) {}

  const Token& peek() const { return tokens[at]; }
  Token next() { return tokens[at == tokens.size() - 1 ? at : at++]; }
  bool done() const { return peek().kind == Tok::End; }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) {
      throw ParseError("expected " + what +
                           (peek().kind == Tok::End ? " at end of input"
                                                    : ", got '" + peek().text + "'"),
                       peek().pos);
    }
    return next();
  }
};

}  // namespace privbeh::detail
