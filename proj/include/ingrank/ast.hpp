#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ingrank/lexer.hpp"

namespace ingrank {

// Fixed node-kind vocabulary. Anything the coarse grammar cannot place
// collapses into Unknown instead of failing.
enum class AstKind {
  Block,
  If,
  Loop,
  Return,
  Throw,
  Assignment,
  Declaration,
  Call,
  FieldAccess,
  BinaryOp,
  UnaryOp,
  Literal,
  Identifier,
  ArgumentList,
  Unknown,
};

inline constexpr int kAstKindCount = 15;

inline const char* to_string(AstKind kind) {
  switch (kind) {
    case AstKind::Block: return "block";
    case AstKind::If: return "if";
    case AstKind::Loop: return "loop";
    case AstKind::Return: return "return";
    case AstKind::Throw: return "throw";
    case AstKind::Assignment: return "assignment";
    case AstKind::Declaration: return "declaration";
    case AstKind::Call: return "call";
    case AstKind::FieldAccess: return "field-access";
    case AstKind::BinaryOp: return "binary-op";
    case AstKind::UnaryOp: return "unary-op";
    case AstKind::Literal: return "literal";
    case AstKind::Identifier: return "identifier";
    case AstKind::ArgumentList: return "argument-list";
    case AstKind::Unknown: return "unknown";
  }
  return "?";
}

struct AstNode {
  AstKind kind = AstKind::Unknown;
  std::vector<AstNode> children;

  AstNode() = default;
  explicit AstNode(AstKind k) : kind(k) {}
  AstNode(AstKind k, std::vector<AstNode> c) : kind(k), children(std::move(c)) {}
};

inline size_t ast_node_count(const AstNode& node) {
  size_t count = 1;
  for (const AstNode& child : node.children) count += ast_node_count(child);
  return count;
}

namespace detail {

inline bool is_modifier_keyword(std::string_view text) {
  return text == "public" || text == "private" || text == "protected" ||
         text == "static" || text == "final" || text == "abstract" ||
         text == "native" || text == "transient" || text == "volatile" ||
         text == "strictfp" || text == "default";
}

inline bool is_primitive_type_keyword(std::string_view text) {
  return text == "void" || text == "boolean" || text == "byte" || text == "char" ||
         text == "short" || text == "int" || text == "long" || text == "float" ||
         text == "double";
}

inline bool is_control_keyword(std::string_view text) {
  return text == "if" || text == "else" || text == "while" || text == "for" ||
         text == "do" || text == "switch" || text == "case" || text == "try" ||
         text == "catch" || text == "finally" || text == "return" ||
         text == "throw" || text == "break" || text == "continue" ||
         text == "assert";
}

// Recursive-descent parser over a token span. Total: every path consumes at
// least one token, and junk degrades to Unknown leaves.
class AstParser {
 public:
  explicit AstParser(std::span<const Token> tokens) : toks_(tokens) {}

  AstNode parse_component() {
    if (toks_.empty()) return AstNode(AstKind::Unknown);
    std::vector<AstNode> nodes;
    while (!eof()) {
      size_t before = pos_;
      parse_statement_into(nodes);
      if (pos_ == before) ++pos_;  // safety net, should not trigger
    }
    if (nodes.empty()) return AstNode(AstKind::Unknown);
    if (nodes.size() == 1) return std::move(nodes.front());
    bool all_unknown_leaves = true;
    for (const AstNode& n : nodes) {
      if (n.kind != AstKind::Unknown || !n.children.empty()) {
        all_unknown_leaves = false;
        break;
      }
    }
    if (all_unknown_leaves) return AstNode(AstKind::Unknown);
    return AstNode(AstKind::Block, std::move(nodes));
  }

 private:
  std::span<const Token> toks_;
  size_t pos_ = 0;

  bool eof() const { return pos_ >= toks_.size(); }
  const Token& cur() const { return toks_[pos_]; }
  bool at_sep(std::string_view text) const {
    return !eof() && cur().kind == TokenKind::Separator && cur().text == text;
  }
  bool at_op(std::string_view text) const {
    return !eof() && cur().kind == TokenKind::Operator && cur().text == text;
  }
  bool at_keyword(std::string_view text) const {
    return !eof() && cur().kind == TokenKind::Keyword && cur().text == text;
  }
  bool consume_sep(std::string_view text) {
    if (at_sep(text)) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool consume_op(std::string_view text) {
    if (at_op(text)) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool consume_keyword(std::string_view text) {
    if (at_keyword(text)) {
      ++pos_;
      return true;
    }
    return false;
  }

  // Appends zero or one node (labels and stray ';' produce none).
  void parse_statement_into(std::vector<AstNode>& out) {
    if (eof()) return;
    if (consume_sep(";")) return;
    if (at_sep("}")) {  // stray close brace
      ++pos_;
      out.push_back(AstNode(AstKind::Unknown));
      return;
    }
    if (at_sep("{")) {
      out.push_back(parse_block());
      return;
    }
    if (cur().kind == TokenKind::Keyword) {
      std::string_view kw = cur().text;
      if (kw == "if") { out.push_back(parse_if()); return; }
      if (kw == "while") { out.push_back(parse_while()); return; }
      if (kw == "do") { out.push_back(parse_do()); return; }
      if (kw == "for") { out.push_back(parse_for()); return; }
      if (kw == "switch") { out.push_back(parse_switch()); return; }
      if (kw == "return") { out.push_back(parse_return()); return; }
      if (kw == "throw") { out.push_back(parse_throw()); return; }
      if (kw == "try") { out.push_back(parse_try()); return; }
      if (kw == "break" || kw == "continue") {
        ++pos_;
        if (!eof() && cur().kind == TokenKind::Identifier) ++pos_;  // label
        consume_sep(";");
        out.push_back(AstNode(AstKind::Unknown));
        return;
      }
      if (kw == "assert") {
        ++pos_;
        std::vector<AstNode> parts;
        parts.push_back(parse_expression());
        if (consume_op(":")) parts.push_back(parse_expression());
        consume_sep(";");
        out.push_back(AstNode(AstKind::Unknown, std::move(parts)));
        return;
      }
      if (kw == "case") {
        ++pos_;
        skip_until_label_end();
        return;
      }
      if (kw == "default" && pos_ + 1 < toks_.size() &&
          toks_[pos_ + 1].kind == TokenKind::Operator && toks_[pos_ + 1].text == ":") {
        pos_ += 2;
        return;
      }
      if (kw == "synchronized" && pos_ + 1 < toks_.size() &&
          toks_[pos_ + 1].kind == TokenKind::Separator && toks_[pos_ + 1].text == "(") {
        ++pos_;
        std::vector<AstNode> parts;
        parts.push_back(parse_paren_condition());
        if (!eof()) parse_statement_into(parts);
        out.push_back(AstNode(AstKind::Block, std::move(parts)));
        return;
      }
      if (kw == "class" || kw == "interface" || kw == "enum") {
        out.push_back(parse_type_declaration());
        return;
      }
      if (kw == "else") {  // orphan else (header component); skip
        ++pos_;
        return;
      }
      if (kw == "package" || kw == "import") {
        ++pos_;
        while (!eof() && !consume_sep(";")) ++pos_;
        return;
      }
    }
    out.push_back(parse_declaration_or_expression());
  }

  AstNode parse_block() {
    consume_sep("{");
    std::vector<AstNode> body;
    while (!eof() && !at_sep("}")) {
      size_t before = pos_;
      parse_statement_into(body);
      if (pos_ == before) ++pos_;
    }
    consume_sep("}");
    return AstNode(AstKind::Block, std::move(body));
  }

  AstNode parse_optional_body() {
    // Body after a control header; absent for header-only components.
    std::vector<AstNode> nodes;
    if (!eof()) parse_statement_into(nodes);
    if (nodes.empty()) return AstNode();
    return std::move(nodes.front());
  }

  AstNode parse_paren_condition() {
    if (!consume_sep("(")) return AstNode(AstKind::Unknown);
    AstNode expr = parse_expression();
    skip_to_close_paren();
    return expr;
  }

  void skip_to_close_paren() {
    int depth = 1;
    while (!eof()) {
      if (at_sep("(")) ++depth;
      if (at_sep(")")) {
        --depth;
        if (depth == 0) {
          ++pos_;
          return;
        }
      }
      ++pos_;
    }
  }

  void skip_until_label_end() {
    // after `case`: consume up to ':' or '->' at this nesting level
    int paren = 0;
    while (!eof()) {
      if (at_sep("(")) ++paren;
      if (at_sep(")")) --paren;
      if (paren == 0 && (at_op(":") || at_op("->"))) {
        ++pos_;
        return;
      }
      if (at_sep("{") || at_sep("}") || at_sep(";")) return;
      ++pos_;
    }
  }

  AstNode parse_if() {
    consume_keyword("if");
    std::vector<AstNode> parts;
    parts.push_back(parse_paren_condition());
    if (!eof() && !at_sep("}")) {
      parse_statement_into(parts);
    }
    if (consume_keyword("else")) {
      parse_statement_into(parts);
    }
    return AstNode(AstKind::If, std::move(parts));
  }

  AstNode parse_while() {
    consume_keyword("while");
    std::vector<AstNode> parts;
    parts.push_back(parse_paren_condition());
    if (!eof() && !at_sep("}") && !at_sep(";")) {
      parse_statement_into(parts);
    } else {
      consume_sep(";");  // do-while tail
    }
    return AstNode(AstKind::Loop, std::move(parts));
  }

  AstNode parse_do() {
    consume_keyword("do");
    std::vector<AstNode> parts;
    if (!eof()) parse_statement_into(parts);
    if (consume_keyword("while")) {
      parts.push_back(parse_paren_condition());
      consume_sep(";");
    }
    return AstNode(AstKind::Loop, std::move(parts));
  }

  AstNode parse_for() {
    consume_keyword("for");
    std::vector<AstNode> parts;
    if (consume_sep("(")) {
      size_t start = pos_;
      size_t close = find_matching_paren(start);
      size_t colon = find_top_level_colon(start, close);
      if (colon != npos) {
        // enhanced for: declaration : iterable
        parts.push_back(parse_range_fragment(start, colon));
        parts.push_back(parse_expression_range(colon + 1, close));
      } else {
        size_t seg_start = start;
        for (size_t k = start; k <= close; ++k) {
          bool at_end = k == close;
          if (at_end || (tok_is_sep(k, ";") && paren_depth_between(start, k) == 0)) {
            if (k > seg_start) parts.push_back(parse_range_fragment(seg_start, k));
            seg_start = k + 1;
          }
        }
      }
      pos_ = close < toks_.size() ? close + 1 : toks_.size();
    }
    if (!eof() && !at_sep("}")) {
      parse_statement_into(parts);
    }
    return AstNode(AstKind::Loop, std::move(parts));
  }

  AstNode parse_switch() {
    consume_keyword("switch");
    std::vector<AstNode> parts;
    parts.push_back(parse_paren_condition());
    if (at_sep("{")) parts.push_back(parse_block());
    return AstNode(AstKind::If, std::move(parts));
  }

  AstNode parse_return() {
    consume_keyword("return");
    std::vector<AstNode> parts;
    if (!eof() && !at_sep(";") && !at_sep("}")) parts.push_back(parse_expression());
    consume_sep(";");
    return AstNode(AstKind::Return, std::move(parts));
  }

  AstNode parse_throw() {
    consume_keyword("throw");
    std::vector<AstNode> parts;
    if (!eof() && !at_sep(";") && !at_sep("}")) parts.push_back(parse_expression());
    consume_sep(";");
    return AstNode(AstKind::Throw, std::move(parts));
  }

  AstNode parse_try() {
    consume_keyword("try");
    std::vector<AstNode> parts;
    if (at_sep("(")) {  // try-with-resources
      ++pos_;
      parts.push_back(parse_expression());
      skip_to_close_paren();
    }
    if (!eof()) parse_statement_into(parts);
    while (consume_keyword("catch")) {
      std::vector<AstNode> clause;
      if (consume_sep("(")) {
        // exception parameter: type name(s) then identifier
        std::string last_identifier;
        int depth = 1;
        while (!eof() && depth > 0) {
          if (at_sep("(")) ++depth;
          if (at_sep(")")) {
            --depth;
            if (depth == 0) break;
          }
          if (cur().kind == TokenKind::Identifier) last_identifier = cur().text;
          ++pos_;
        }
        consume_sep(")");
        if (!last_identifier.empty()) {
          clause.push_back(
              AstNode(AstKind::Declaration, {AstNode(AstKind::Identifier)}));
        }
      }
      if (!eof()) parse_statement_into(clause);
      parts.push_back(AstNode(AstKind::Unknown, std::move(clause)));
    }
    if (consume_keyword("finally")) {
      if (!eof()) parse_statement_into(parts);
    }
    return AstNode(AstKind::Block, std::move(parts));
  }

  AstNode parse_type_declaration() {
    ++pos_;  // class/interface/enum
    std::vector<AstNode> parts;
    if (!eof() && cur().kind == TokenKind::Identifier) {
      parts.push_back(AstNode(AstKind::Identifier));
      ++pos_;
    }
    while (!eof() && !at_sep("{") && !at_sep(";")) ++pos_;  // extends/implements
    if (at_sep("{")) parts.push_back(parse_block());
    consume_sep(";");
    return AstNode(AstKind::Declaration, std::move(parts));
  }

  // ---- declarations, methods and expression statements ----

  AstNode parse_declaration_or_expression() {
    skip_annotations_and_modifiers();

    // method or constructor: [type] name ( params ) [throws ...] {
    size_t method_name = npos;
    if (looks_like_method_header(method_name)) {
      return parse_method(method_name);
    }

    // variable declaration: type name (= init)? (, name (= init)?)* ;
    size_t after_type = try_parse_type(pos_);
    if (after_type != npos && after_type < toks_.size() &&
        toks_[after_type].kind == TokenKind::Identifier) {
      size_t next = after_type + 1;
      // allow trailing [] on the declarator
      while (next + 1 < toks_.size() && tok_is_sep(next, "[") && tok_is_sep(next + 1, "]"))
        next += 2;
      bool decl = next >= toks_.size() || tok_is_sep(next, ";") ||
                  tok_is_sep(next, ",") || tok_is_op(next, "=");
      if (decl && after_type > pos_) {
        pos_ = after_type;
        return parse_declarators();
      }
    }

    return parse_expression_statement();
  }

  void skip_annotations_and_modifiers() {
    for (;;) {
      if (at_sep("@")) {
        ++pos_;
        if (!eof() && cur().kind == TokenKind::Identifier) ++pos_;
        while (consume_sep(".")) {
          if (!eof() && cur().kind == TokenKind::Identifier) ++pos_;
        }
        if (at_sep("(")) {
          ++pos_;
          skip_to_close_paren();
        }
        continue;
      }
      if (!eof() && cur().kind == TokenKind::Keyword && is_modifier_keyword(cur().text) &&
          !(cur().text == "default" && pos_ + 1 < toks_.size() &&
            tok_is_op(pos_ + 1, ":"))) {
        ++pos_;
        continue;
      }
      break;
    }
  }

  bool looks_like_method_header(size_t& name_index) {
    size_t p = pos_;
    size_t after_type = try_parse_type(p);
    size_t candidate = npos;
    if (after_type != npos && after_type < toks_.size() &&
        toks_[after_type].kind == TokenKind::Identifier &&
        after_type + 1 < toks_.size() && tok_is_sep(after_type + 1, "(")) {
      candidate = after_type;  // type name (
    } else if (p < toks_.size() && toks_[p].kind == TokenKind::Identifier &&
               p + 1 < toks_.size() && tok_is_sep(p + 1, "(")) {
      candidate = p;  // constructor style: name (
    }
    if (candidate == npos) return false;
    size_t close = find_matching_paren(candidate + 2);
    if (close == npos) return false;
    size_t q = close + 1;
    if (q < toks_.size() && toks_[q].kind == TokenKind::Keyword &&
        toks_[q].text == "throws") {
      ++q;
      while (q < toks_.size() && (toks_[q].kind == TokenKind::Identifier ||
                                  tok_is_sep(q, ".") || tok_is_sep(q, ",")))
        ++q;
    }
    if (q < toks_.size() && tok_is_sep(q, "{")) {
      name_index = candidate;
      return true;
    }
    return false;
  }

  AstNode parse_method(size_t name_index) {
    std::vector<AstNode> parts;
    parts.push_back(AstNode(AstKind::Identifier));  // method name
    pos_ = name_index + 1;
    consume_sep("(");
    std::vector<AstNode> params;
    int depth = 1;
    size_t last_identifier = npos;
    while (!eof() && depth > 0) {
      if (at_sep("(")) ++depth;
      if (at_sep(")")) {
        --depth;
        if (depth == 0) break;
      }
      if (depth == 1 && at_sep(",")) {
        if (last_identifier != npos) params.push_back(AstNode(AstKind::Identifier));
        last_identifier = npos;
      } else if (cur().kind == TokenKind::Identifier) {
        last_identifier = pos_;
      }
      ++pos_;
    }
    if (last_identifier != npos) params.push_back(AstNode(AstKind::Identifier));
    consume_sep(")");
    parts.push_back(AstNode(AstKind::ArgumentList, std::move(params)));
    if (consume_keyword("throws")) {
      while (!eof() && (cur().kind == TokenKind::Identifier || at_sep(".") || at_sep(",")))
        ++pos_;
    }
    if (at_sep("{")) parts.push_back(parse_block());
    consume_sep(";");
    return AstNode(AstKind::Declaration, std::move(parts));
  }

  AstNode parse_declarators() {
    std::vector<AstNode> parts;
    for (;;) {
      if (eof() || cur().kind != TokenKind::Identifier) break;
      parts.push_back(AstNode(AstKind::Identifier));
      ++pos_;
      while (consume_sep("[")) consume_sep("]");
      if (consume_op("=")) {
        parts.push_back(parse_expression());
      }
      if (!consume_sep(",")) break;
    }
    consume_sep(";");
    return AstNode(AstKind::Declaration, std::move(parts));
  }

  AstNode parse_expression_statement() {
    AstNode expr = parse_expression();
    consume_sep(";");
    return expr;
  }

  // ---- expressions ----

  static constexpr size_t npos = static_cast<size_t>(-1);

  bool tok_is_sep(size_t index, std::string_view text) const {
    return index < toks_.size() && toks_[index].kind == TokenKind::Separator &&
           toks_[index].text == text;
  }
  bool tok_is_op(size_t index, std::string_view text) const {
    return index < toks_.size() && toks_[index].kind == TokenKind::Operator &&
           toks_[index].text == text;
  }

  size_t find_matching_paren(size_t after_open) const {
    // after_open points at the first token inside '('
    int depth = 1;
    for (size_t k = after_open; k < toks_.size(); ++k) {
      if (tok_is_sep(k, "(")) ++depth;
      if (tok_is_sep(k, ")")) {
        --depth;
        if (depth == 0) return k;
      }
    }
    return npos;
  }

  size_t find_top_level_colon(size_t start, size_t end) const {
    int paren = 0, question = 0;
    for (size_t k = start; k < end && k < toks_.size(); ++k) {
      if (tok_is_sep(k, "(")) ++paren;
      if (tok_is_sep(k, ")")) --paren;
      if (paren == 0 && tok_is_op(k, "?")) ++question;
      if (paren == 0 && tok_is_op(k, ":")) {
        if (question > 0) {
          --question;
        } else {
          return k;
        }
      }
    }
    return npos;
  }

  int paren_depth_between(size_t start, size_t end) const {
    int depth = 0;
    for (size_t k = start; k < end && k < toks_.size(); ++k) {
      if (tok_is_sep(k, "(")) ++depth;
      if (tok_is_sep(k, ")")) --depth;
    }
    return depth;
  }

  AstNode parse_range_fragment(size_t start, size_t end) {
    size_t saved = pos_;
    std::span<const Token> saved_span = toks_;
    AstParser sub(toks_.subspan(start, end - start));
    std::vector<AstNode> nodes;
    sub.parse_statement_into(nodes);
    toks_ = saved_span;
    pos_ = saved;
    if (nodes.empty()) return AstNode(AstKind::Unknown);
    return std::move(nodes.front());
  }

  AstNode parse_expression_range(size_t start, size_t end) {
    AstParser sub(toks_.subspan(start, end - start));
    return sub.parse_expression();
  }

  AstNode parse_expression() { return parse_assignment_expr(); }

  AstNode parse_assignment_expr() {
    AstNode left = parse_ternary();
    if (!eof() && cur().kind == TokenKind::Operator) {
      std::string_view op = cur().text;
      bool is_assign = op == "=" || (op.size() >= 2 && op.back() == '=' &&
                                     op != "==" && op != "!=" && op != "<=" &&
                                     op != ">=");
      if (is_assign) {
        ++pos_;
        AstNode right = parse_assignment_expr();
        return AstNode(AstKind::Assignment, {std::move(left), std::move(right)});
      }
    }
    return left;
  }

  AstNode parse_ternary() {
    AstNode cond = parse_binary(0);
    if (consume_op("?")) {
      AstNode then_expr = parse_assignment_expr();
      consume_op(":");
      AstNode else_expr = parse_assignment_expr();
      return AstNode(AstKind::If,
                     {std::move(cond), std::move(then_expr), std::move(else_expr)});
    }
    return cond;
  }

  int binary_precedence(const Token& token) const {
    if (token.kind == TokenKind::Keyword && token.text == "instanceof") return 5;
    if (token.kind != TokenKind::Operator) return -1;
    std::string_view op = token.text;
    if (op == "||") return 0;
    if (op == "&&") return 1;
    if (op == "|") return 2;
    if (op == "^") return 3;
    if (op == "&") return 4;
    if (op == "==" || op == "!=") return 5;
    if (op == "<" || op == ">" || op == "<=" || op == ">=") return 6;
    if (op == "<<" || op == ">>" || op == ">>>") return 7;
    if (op == "+" || op == "-") return 8;
    if (op == "*" || op == "/" || op == "%") return 9;
    return -1;
  }

  AstNode parse_binary(int min_precedence) {
    AstNode left = parse_unary();
    for (;;) {
      if (eof()) return left;
      int precedence = binary_precedence(cur());
      if (precedence < min_precedence) return left;
      bool is_instanceof = cur().kind == TokenKind::Keyword;
      ++pos_;
      AstNode right;
      if (is_instanceof) {
        size_t after = try_parse_type(pos_);
        pos_ = after == npos ? pos_ : after;
        right = AstNode(AstKind::Identifier);
      } else {
        right = parse_binary(precedence + 1);
      }
      left = AstNode(AstKind::BinaryOp, {std::move(left), std::move(right)});
    }
  }

  AstNode parse_unary() {
    if (at_op("!") || at_op("~") || at_op("+") || at_op("-") || at_op("++") ||
        at_op("--")) {
      ++pos_;
      return AstNode(AstKind::UnaryOp, {parse_unary()});
    }
    // cast: ( type ) operand
    if (at_sep("(")) {
      size_t close = find_matching_paren(pos_ + 1);
      if (close != npos && is_type_only_range(pos_ + 1, close) &&
          starts_unary_operand(close + 1)) {
        pos_ = close + 1;
        return AstNode(AstKind::UnaryOp, {parse_unary()});
      }
    }
    return parse_postfix();
  }

  bool is_type_only_range(size_t start, size_t end) const {
    if (start >= end) return false;
    for (size_t k = start; k < end; ++k) {
      const Token& t = toks_[k];
      bool ok = t.kind == TokenKind::Identifier ||
                (t.kind == TokenKind::Keyword &&
                 (is_primitive_type_keyword(t.text) || t.text == "extends" ||
                  t.text == "super")) ||
                (t.kind == TokenKind::Separator &&
                 (t.text == "." || t.text == "[" || t.text == "]" || t.text == ",")) ||
                (t.kind == TokenKind::Operator &&
                 (t.text == "<" || t.text == ">" || t.text == "?" || t.text == "&"));
      if (!ok) return false;
    }
    return true;
  }

  bool starts_unary_operand(size_t index) const {
    if (index >= toks_.size()) return false;
    const Token& t = toks_[index];
    switch (t.kind) {
      case TokenKind::Identifier:
      case TokenKind::NumberLiteral:
      case TokenKind::StringLiteral:
      case TokenKind::CharLiteral:
        return true;
      case TokenKind::Keyword:
        return t.text == "new" || t.text == "this" || t.text == "super" ||
               t.text == "true" || t.text == "false" || t.text == "null" ||
               is_primitive_type_keyword(t.text);
      case TokenKind::Operator:
        return t.text == "!" || t.text == "~";
      case TokenKind::Separator:
        return t.text == "(";
    }
    return false;
  }

  AstNode parse_postfix() {
    AstNode node = parse_primary();
    for (;;) {
      if (at_sep(".")) {
        ++pos_;
        if (!eof() && (cur().kind == TokenKind::Identifier ||
                       cur().kind == TokenKind::Keyword)) {
          ++pos_;
        }
        node = AstNode(AstKind::FieldAccess, {std::move(node), AstNode(AstKind::Identifier)});
        continue;
      }
      if (at_sep("::")) {
        ++pos_;
        if (!eof() && (cur().kind == TokenKind::Identifier ||
                       cur().kind == TokenKind::Keyword)) {
          ++pos_;
        }
        node = AstNode(AstKind::FieldAccess, {std::move(node), AstNode(AstKind::Identifier)});
        continue;
      }
      if (at_sep("(")) {
        ++pos_;
        node = AstNode(AstKind::Call, {std::move(node), parse_argument_list()});
        continue;
      }
      if (at_sep("[")) {
        ++pos_;
        std::vector<AstNode> idx;
        if (!eof() && !at_sep("]")) idx.push_back(parse_expression());
        consume_sep("]");
        AstNode access(AstKind::FieldAccess);
        access.children.push_back(std::move(node));
        for (AstNode& n : idx) access.children.push_back(std::move(n));
        node = std::move(access);
        continue;
      }
      if (at_op("++") || at_op("--")) {
        ++pos_;
        node = AstNode(AstKind::UnaryOp, {std::move(node)});
        continue;
      }
      if (at_op("->")) {  // lambda with single parameter or parenthesized params
        ++pos_;
        AstNode body = at_sep("{") ? parse_block() : parse_expression();
        node = AstNode(AstKind::Unknown, {std::move(node), std::move(body)});
        continue;
      }
      return node;
    }
  }

  // consumes up to and including the closing ')'
  AstNode parse_argument_list() {
    std::vector<AstNode> args;
    while (!eof() && !at_sep(")")) {
      args.push_back(parse_expression());
      if (!consume_sep(",")) break;
    }
    consume_sep(")");
    return AstNode(AstKind::ArgumentList, std::move(args));
  }

  AstNode parse_primary() {
    if (eof()) return AstNode(AstKind::Unknown);
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::NumberLiteral:
      case TokenKind::StringLiteral:
      case TokenKind::CharLiteral:
        ++pos_;
        return AstNode(AstKind::Literal);
      case TokenKind::Identifier:
        ++pos_;
        return AstNode(AstKind::Identifier);
      case TokenKind::Keyword:
        if (t.text == "true" || t.text == "false" || t.text == "null") {
          ++pos_;
          return AstNode(AstKind::Literal);
        }
        if (t.text == "this" || t.text == "super") {
          ++pos_;
          return AstNode(AstKind::Identifier);
        }
        if (t.text == "new") return parse_new();
        if (is_primitive_type_keyword(t.text)) {  // e.g. int.class, double[]::new
          ++pos_;
          return AstNode(AstKind::Identifier);
        }
        ++pos_;
        return AstNode(AstKind::Unknown);
      case TokenKind::Separator:
        if (t.text == "(") {
          ++pos_;
          std::vector<AstNode> inner;
          if (!eof() && !at_sep(")")) {
            inner.push_back(parse_expression());
            while (consume_sep(",")) inner.push_back(parse_expression());
          }
          consume_sep(")");
          if (at_op("->")) {  // parenthesized lambda parameters
            ++pos_;
            AstNode body = at_sep("{") ? parse_block() : parse_expression();
            inner.push_back(std::move(body));
            return AstNode(AstKind::Unknown, std::move(inner));
          }
          if (inner.size() == 1) return std::move(inner.front());
          return AstNode(AstKind::Unknown, std::move(inner));
        }
        if (t.text == "{") return parse_brace_initializer();
        ++pos_;
        return AstNode(AstKind::Unknown);
      default:
        ++pos_;
        return AstNode(AstKind::Unknown);
    }
  }

  AstNode parse_brace_initializer() {
    consume_sep("{");
    std::vector<AstNode> items;
    while (!eof() && !at_sep("}")) {
      items.push_back(parse_expression());
      if (!consume_sep(",")) break;
    }
    consume_sep("}");
    return AstNode(AstKind::ArgumentList, std::move(items));
  }

  AstNode parse_new() {
    consume_keyword("new");
    // type name
    if (!eof() && (cur().kind == TokenKind::Identifier ||
                   (cur().kind == TokenKind::Keyword &&
                    is_primitive_type_keyword(cur().text)))) {
      ++pos_;
      while (at_sep(".")) {
        ++pos_;
        if (!eof() && cur().kind == TokenKind::Identifier) ++pos_;
      }
      skip_generic_arguments();
    }
    std::vector<AstNode> parts;
    parts.push_back(AstNode(AstKind::Identifier));  // constructed type
    if (consume_sep("(")) {
      parts.push_back(parse_argument_list());
      if (at_sep("{")) parts.push_back(parse_block());  // anonymous class body
      return AstNode(AstKind::Call, std::move(parts));
    }
    if (at_sep("[")) {
      std::vector<AstNode> dims;
      while (consume_sep("[")) {
        if (!eof() && !at_sep("]")) dims.push_back(parse_expression());
        consume_sep("]");
      }
      parts.push_back(AstNode(AstKind::ArgumentList, std::move(dims)));
      if (at_sep("{")) parts.push_back(parse_brace_initializer());
      return AstNode(AstKind::Call, std::move(parts));
    }
    return AstNode(AstKind::Call, std::move(parts));
  }

  void skip_generic_arguments() {
    if (!at_op("<")) return;
    int depth = 0;
    size_t k = pos_;
    while (k < toks_.size()) {
      if (tok_is_op(k, "<")) ++depth;
      else if (tok_is_op(k, ">")) { --depth; if (depth == 0) { pos_ = k + 1; return; } }
      else if (tok_is_op(k, ">>")) { depth -= 2; if (depth <= 0) { pos_ = k + 1; return; } }
      else if (toks_[k].kind != TokenKind::Identifier && !tok_is_sep(k, ",") &&
               !tok_is_sep(k, ".") && !tok_is_op(k, "?") &&
               !(toks_[k].kind == TokenKind::Keyword &&
                 (toks_[k].text == "extends" || toks_[k].text == "super" ||
                  is_primitive_type_keyword(toks_[k].text))) &&
               !tok_is_sep(k, "[") && !tok_is_sep(k, "]")) {
        return;  // not generic arguments after all
      }
      ++k;
    }
  }

  // Returns the index one past a type, or npos if no type starts at `from`.
  size_t try_parse_type(size_t from) const {
    size_t k = from;
    if (k >= toks_.size()) return npos;
    if (toks_[k].kind == TokenKind::Keyword && is_primitive_type_keyword(toks_[k].text)) {
      ++k;
    } else if (toks_[k].kind == TokenKind::Identifier) {
      ++k;
      while (k + 1 < toks_.size() && tok_is_sep(k, ".") &&
             toks_[k + 1].kind == TokenKind::Identifier)
        k += 2;
      // generic arguments
      if (k < toks_.size() && tok_is_op(k, "<")) {
        int depth = 0;
        size_t g = k;
        bool closed = false;
        while (g < toks_.size()) {
          if (tok_is_op(g, "<")) ++depth;
          else if (tok_is_op(g, ">")) { --depth; if (depth == 0) { closed = true; ++g; break; } }
          else if (tok_is_op(g, ">>")) { depth -= 2; if (depth <= 0) { closed = true; ++g; break; } }
          else if (toks_[g].kind != TokenKind::Identifier && !tok_is_sep(g, ",") &&
                   !tok_is_sep(g, ".") && !tok_is_op(g, "?") && !tok_is_sep(g, "[") &&
                   !tok_is_sep(g, "]") &&
                   !(toks_[g].kind == TokenKind::Keyword &&
                     (toks_[g].text == "extends" || toks_[g].text == "super" ||
                      is_primitive_type_keyword(toks_[g].text)))) {
            break;
          }
          ++g;
        }
        if (closed) k = g;
      }
    } else {
      return npos;
    }
    while (k + 1 < toks_.size() && tok_is_sep(k, "[") && tok_is_sep(k + 1, "]")) k += 2;
    return k;
  }
};

}  // namespace detail

// Builds a coarse AST for a component's token sequence. Total: never throws,
// junk degrades to Unknown nodes.
inline AstNode parse_ast(std::span<const Token> tokens) {
  detail::AstParser parser(tokens);
  return parser.parse_component();
}

inline AstNode parse_ast(const std::vector<Token>& tokens) {
  return parse_ast(std::span<const Token>(tokens.data(), tokens.size()));
}

}  // namespace ingrank
