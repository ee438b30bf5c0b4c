#pragma once

#include <array>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ingrank/errors.hpp"

namespace ingrank {

enum class TokenKind {
  Identifier,
  Keyword,
  NumberLiteral,
  StringLiteral,
  CharLiteral,
  Operator,
  Separator,
};

inline const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::NumberLiteral: return "number";
    case TokenKind::StringLiteral: return "string";
    case TokenKind::CharLiteral: return "char";
    case TokenKind::Operator: return "operator";
    case TokenKind::Separator: return "separator";
  }
  return "?";
}

inline TokenKind token_kind_from_string(std::string_view name) {
  if (name == "identifier") return TokenKind::Identifier;
  if (name == "keyword") return TokenKind::Keyword;
  if (name == "number") return TokenKind::NumberLiteral;
  if (name == "string") return TokenKind::StringLiteral;
  if (name == "char") return TokenKind::CharLiteral;
  if (name == "operator") return TokenKind::Operator;
  if (name == "separator") return TokenKind::Separator;
  throw DataError("unknown token kind: " + std::string(name));
}

struct Token {
  TokenKind kind;
  std::string text;
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  size_t offset = 0;

  bool operator==(const Token& other) const {
    return kind == other.kind && text == other.text;
  }
};

inline const std::unordered_set<std::string_view>& java_keywords() {
  static const std::unordered_set<std::string_view> kw = {
      "abstract",   "assert",    "boolean",  "break",     "byte",       "case",
      "catch",      "char",      "class",    "const",     "continue",   "default",
      "do",         "double",    "else",     "enum",      "extends",    "final",
      "finally",    "float",     "for",      "goto",      "if",         "implements",
      "import",     "instanceof", "int",     "interface", "long",       "native",
      "new",        "package",   "private",  "protected", "public",     "return",
      "short",      "static",    "strictfp", "super",     "switch",     "synchronized",
      "this",       "throw",     "throws",   "transient", "try",        "void",
      "volatile",   "while",     "true",     "false",     "null"};
  return kw;
}

namespace detail {

inline bool is_identifier_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
         c >= 0x80;  // tolerate non-ASCII identifiers
}

inline bool is_identifier_part(unsigned char c) {
  return is_identifier_start(c) || (c >= '0' && c <= '9');
}

inline bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

// Multi-character operators, longest first so max-munch is a simple scan.
inline const std::array<std::string_view, 25>& multi_operators() {
  static const std::array<std::string_view, 25> ops = {
      ">>>=", "<<=", ">>=", ">>>", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
      "+=",   "-=",  "*=",  "/=",  "&=", "|=", "^=", "%=", "<<", ">>", "->", "::",
      "..."};
  return ops;
}

}  // namespace detail

// Tokenizes Java-like source. Comments and whitespace are dropped; string and
// char literals are kept as single tokens including their quotes.
inline std::vector<Token> lex(std::string_view source) {
  using detail::is_digit;
  using detail::is_identifier_part;
  using detail::is_identifier_start;

  std::vector<Token> tokens;
  size_t i = 0;
  int line = 1;
  int column = 1;

  auto advance = [&](size_t count) {
    for (size_t k = 0; k < count; ++k) {
      if (source[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  auto emit = [&](TokenKind kind, size_t start, size_t end, int tok_line, int tok_col) {
    tokens.push_back(Token{kind, std::string(source.substr(start, end - start)),
                           tok_line, tok_col, start});
  };

  while (i < source.size()) {
    char c = source[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < source.size() && source[i + 1] == '*') {
      int start_line = line;
      advance(2);
      bool closed = false;
      while (i < source.size()) {
        if (source[i] == '*' && i + 1 < source.size() && source[i + 1] == '/') {
          advance(2);
          closed = true;
          break;
        }
        advance(1);
      }
      if (!closed) throw LexError("unterminated block comment", start_line);
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      size_t start = i;
      int tok_line = line, tok_col = column;
      advance(1);
      bool closed = false;
      while (i < source.size()) {
        char d = source[i];
        if (d == '\\' && i + 1 < source.size()) {
          advance(2);
          continue;
        }
        if (d == '\n') break;  // literals do not span lines
        advance(1);
        if (d == quote) {
          closed = true;
          break;
        }
      }
      if (!closed) {
        throw LexError(quote == '"' ? "unterminated string literal"
                                    : "unterminated char literal",
                       tok_line);
      }
      emit(quote == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral, start, i,
           tok_line, tok_col);
      continue;
    }
    if (is_digit(c) ||
        (c == '.' && i + 1 < source.size() && is_digit(source[i + 1]))) {
      size_t start = i;
      int tok_line = line, tok_col = column;
      advance(1);
      while (i < source.size()) {
        char d = source[i];
        char prev = source[i - 1];
        if (is_identifier_part(d)) {
          advance(1);
        } else if (d == '.' && i + 1 < source.size() && is_digit(source[i + 1])) {
          advance(1);
        } else if ((d == '+' || d == '-') &&
                   (prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P')) {
          advance(1);
        } else {
          break;
        }
      }
      emit(TokenKind::NumberLiteral, start, i, tok_line, tok_col);
      continue;
    }
    if (is_identifier_start(c)) {
      size_t start = i;
      int tok_line = line, tok_col = column;
      while (i < source.size() && is_identifier_part(source[i])) advance(1);
      std::string_view text = source.substr(start, i - start);
      emit(java_keywords().count(text) ? TokenKind::Keyword : TokenKind::Identifier,
           start, i, tok_line, tok_col);
      continue;
    }
    if (std::string_view("(){}[];,.@").find(c) != std::string_view::npos) {
      // "..." is a separator; plain '.' handled here too
      if (c == '.' && source.substr(i).starts_with("...")) {
        emit(TokenKind::Separator, i, i + 3, line, column);
        advance(3);
      } else {
        emit(TokenKind::Separator, i, i + 1, line, column);
        advance(1);
      }
      continue;
    }
    {
      std::string_view rest = source.substr(i);
      bool matched = false;
      for (std::string_view op : detail::multi_operators()) {
        if (rest.starts_with(op)) {
          if (op == "::") {
            emit(TokenKind::Separator, i, i + op.size(), line, column);
          } else {
            emit(TokenKind::Operator, i, i + op.size(), line, column);
          }
          advance(op.size());
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    // single-char operator; unknown characters also land here, tolerantly
    emit(TokenKind::Operator, i, i + 1, line, column);
    advance(1);
  }
  return tokens;
}

}  // namespace ingrank
