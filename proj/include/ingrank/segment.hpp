#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ingrank/component.hpp"
#include "ingrank/errors.hpp"
#include "ingrank/lexer.hpp"

namespace ingrank {

// Sentinel context id for statements outside any method body.
inline constexpr const char* kTopLevelContext = "<top-level>";

struct SegmentResult {
  std::vector<SourceComponent> methods;
  std::vector<SourceComponent> statements;
  // parallel to `statements`: index into `methods`, or -1 for top level
  std::vector<int> enclosing;
};

namespace detail {

struct MethodSpan {
  size_t header_start;  // token index of the first header token
  size_t name;          // token index of the method name
  size_t body_open;     // '{'
  size_t body_close;    // '}'
  int parent = -1;      // index of the innermost enclosing method span
};

inline bool is_method_preceding_token(const Token& t) {
  // What may legitimately end a return type / modifier list right before the
  // method name: a type name, ']', '>' or a type/modifier keyword.
  if (t.kind == TokenKind::Identifier) return true;
  if (t.kind == TokenKind::Separator && t.text == "]") return true;
  if (t.kind == TokenKind::Operator && t.text == ">") return true;
  if (t.kind == TokenKind::Keyword) {
    return is_primitive_type_keyword(t.text) || is_modifier_keyword(t.text);
  }
  return false;
}

inline bool is_control_header_keyword(std::string_view text) {
  return text == "if" || text == "while" || text == "for" || text == "switch" ||
         text == "catch" || text == "synchronized";
}

}  // namespace detail

// Segments one lexed file into method components (brace-matched bodies behind
// a signature heuristic) and statement components (semicolon-terminated
// statements and control-flow headers inside method bodies). Works on token
// structure, not a full grammar: unusual syntax degrades, it does not fail.
inline SegmentResult segment_file(const std::string& file_label,
                                  const std::string& source,
                                  const std::vector<Token>& tokens) {
  using detail::MethodSpan;

  // brace matching
  std::vector<size_t> match(tokens.size(), static_cast<size_t>(-1));
  {
    std::vector<size_t> stack;
    for (size_t i = 0; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      if (t.kind != TokenKind::Separator) continue;
      if (t.text == "{") stack.push_back(i);
      if (t.text == "}") {
        if (stack.empty())
          throw SegmentError(file_label, "unbalanced '}'", t.line);
        match[stack.back()] = i;
        match[i] = stack.back();
        stack.pop_back();
      }
    }
    if (!stack.empty())
      throw SegmentError(file_label, "unbalanced '{'", tokens[stack.back()].line);
  }

  auto find_close_paren = [&](size_t open) -> size_t {
    int depth = 0;
    for (size_t i = open; i < tokens.size(); ++i) {
      if (tokens[i].kind != TokenKind::Separator) continue;
      if (tokens[i].text == "(") ++depth;
      if (tokens[i].text == ")") {
        --depth;
        if (depth == 0) return i;
      }
    }
    return static_cast<size_t>(-1);
  };

  // method header detection: name '(' params ')' [throws ...] '{'
  std::vector<MethodSpan> spans;
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::Identifier) continue;
    if (!(tokens[i + 1].kind == TokenKind::Separator && tokens[i + 1].text == "("))
      continue;
    if (i == 0 || !detail::is_method_preceding_token(tokens[i - 1])) continue;
    size_t close = find_close_paren(i + 1);
    if (close == static_cast<size_t>(-1)) continue;
    size_t k = close + 1;
    if (k < tokens.size() && tokens[k].kind == TokenKind::Keyword &&
        tokens[k].text == "throws") {
      ++k;
      while (k < tokens.size() &&
             (tokens[k].kind == TokenKind::Identifier ||
              (tokens[k].kind == TokenKind::Separator &&
               (tokens[k].text == "." || tokens[k].text == ","))))
        ++k;
    }
    if (!(k < tokens.size() && tokens[k].kind == TokenKind::Separator &&
          tokens[k].text == "{"))
      continue;
    // header starts after the previous ';', '{' or '}'
    size_t header_start = 0;
    for (size_t b = i; b > 0; --b) {
      const Token& t = tokens[b - 1];
      if (t.kind == TokenKind::Separator &&
          (t.text == ";" || t.text == "{" || t.text == "}")) {
        header_start = b;
        break;
      }
    }
    spans.push_back(MethodSpan{header_start, i, k, match[k]});
  }

  // innermost enclosing span for nesting (anonymous classes and the like)
  for (size_t a = 0; a < spans.size(); ++a) {
    for (size_t b = 0; b < spans.size(); ++b) {
      if (a == b) continue;
      if (spans[b].body_open < spans[a].name && spans[a].body_close < spans[b].body_close) {
        if (spans[a].parent == -1 ||
            spans[b].body_open > spans[static_cast<size_t>(spans[a].parent)].body_open) {
          spans[a].parent = static_cast<int>(b);
        }
      }
    }
  }

  SegmentResult result;
  auto make_component = [&](Role role, size_t first_tok, size_t last_tok,
                            int ordinal) {
    SourceComponent c;
    c.role = role;
    c.file = file_label;
    c.id = file_label + "#" + (role == Role::Method ? "m" : "s") +
           std::to_string(ordinal);
    c.start_line = tokens[first_tok].line;
    c.end_line = tokens[last_tok].line;
    size_t begin = tokens[first_tok].offset;
    size_t end = tokens[last_tok].offset + tokens[last_tok].text.size();
    c.raw_text = source.substr(begin, end - begin);
    c.tokens.assign(tokens.begin() + static_cast<long>(first_tok),
                    tokens.begin() + static_cast<long>(last_tok) + 1);
    c.finalize();
    return c;
  };

  for (size_t m = 0; m < spans.size(); ++m) {
    result.methods.push_back(make_component(Role::Method, spans[m].header_start,
                                            spans[m].body_close,
                                            static_cast<int>(m)));
  }

  // statement extraction inside each method body, skipping the spans of
  // directly nested methods (their statements belong to them)
  int stmt_ordinal = 0;
  for (size_t m = 0; m < spans.size(); ++m) {
    const MethodSpan& span = spans[m];
    size_t t = span.body_open + 1;
    while (t < span.body_close) {
      // skip a nested method whose innermost parent is this one
      bool skipped = false;
      for (size_t n = 0; n < spans.size(); ++n) {
        if (spans[n].parent == static_cast<int>(m) && spans[n].header_start == t) {
          t = spans[n].body_close + 1;
          skipped = true;
          break;
        }
      }
      if (skipped) continue;

      const Token& tok = tokens[t];
      if (tok.kind == TokenKind::Separator && (tok.text == "{" || tok.text == "}")) {
        ++t;
        continue;
      }
      if (tok.kind == TokenKind::Separator && tok.text == ";") {
        ++t;  // empty statement
        continue;
      }
      if (tok.kind == TokenKind::Keyword) {
        std::string_view kw = tok.text;
        if (detail::is_control_header_keyword(kw) && t + 1 < span.body_close &&
            tokens[t + 1].kind == TokenKind::Separator && tokens[t + 1].text == "(") {
          size_t close = find_close_paren(t + 1);
          if (close == static_cast<size_t>(-1) || close > span.body_close) {
            ++t;
            continue;
          }
          result.statements.push_back(
              make_component(Role::Statement, t, close, stmt_ordinal++));
          result.enclosing.push_back(static_cast<int>(m));
          t = close + 1;
          continue;
        }
        if (kw == "else" || kw == "do" || kw == "try" || kw == "finally") {
          ++t;
          continue;
        }
        if (kw == "case" || kw == "default") {
          // switch label: skip through ':' or '->'
          size_t k = t + 1;
          int paren = 0;
          while (k < span.body_close) {
            const Token& lt = tokens[k];
            if (lt.kind == TokenKind::Separator && lt.text == "(") ++paren;
            if (lt.kind == TokenKind::Separator && lt.text == ")") --paren;
            if (paren == 0 && lt.kind == TokenKind::Operator &&
                (lt.text == ":" || lt.text == "->")) {
              ++k;
              break;
            }
            if (lt.kind == TokenKind::Separator &&
                (lt.text == "{" || lt.text == "}" || lt.text == ";"))
              break;
            ++k;
          }
          t = k;
          continue;
        }
      }

      // simple statement: run to ';' at this nesting level; balanced brace
      // groups that belong to the statement (array initializers, lambdas,
      // anonymous classes) are included
      size_t k = t;
      int paren = 0;
      int brace = 0;
      std::optional<size_t> end_tok;
      bool fragment = false;
      while (k <= span.body_close) {
        const Token& st = tokens[k];
        if (st.kind == TokenKind::Separator) {
          if (st.text == "(" || st.text == "[") ++paren;
          if (st.text == ")" || st.text == "]") --paren;
          if (st.text == "{") {
            if (paren == 0 && brace == 0 && k > t) {
              const Token& prev = tokens[k - 1];
              bool attached =
                  (prev.kind == TokenKind::Operator &&
                   (prev.text == "=" || prev.text == "->" ||
                    prev.text.ends_with("="))) ||
                  (prev.kind == TokenKind::Separator &&
                   (prev.text == ")" || prev.text == "," || prev.text == "(" ||
                    prev.text == "["));
              if (!attached) {
                fragment = true;  // block follows; not a simple statement
                break;
              }
            }
            ++brace;
          }
          if (st.text == "}") {
            if (brace == 0) {
              fragment = true;
              break;
            }
            --brace;
          }
          if (st.text == ";" && paren == 0 && brace == 0) {
            end_tok = k;
            break;
          }
        }
        ++k;
      }
      if (end_tok) {
        result.statements.push_back(
            make_component(Role::Statement, t, *end_tok, stmt_ordinal++));
        result.enclosing.push_back(static_cast<int>(m));
        t = *end_tok + 1;
      } else if (fragment) {
        t = k;  // resume at the block or close brace
      } else {
        break;  // ran off the body without a terminator
      }
    }
  }
  return result;
}

inline SegmentResult segment_file(const std::string& file_label, const std::string& source) {
  return segment_file(file_label, source, lex(source));
}

}  // namespace ingrank
