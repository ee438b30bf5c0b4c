#pragma once

#include <string>
#include <vector>

#include "ingrank/ast.hpp"
#include "ingrank/lexer.hpp"
#include "ingrank/util.hpp"

namespace ingrank {

enum class Role { Statement, Method };

inline const char* to_string(Role role) {
  return role == Role::Statement ? "statement" : "method";
}

inline Role role_from_string(std::string_view name) {
  if (name == "statement") return Role::Statement;
  if (name == "method") return Role::Method;
  throw DataError("unknown role: " + std::string(name));
}

// Hash over the (kind, text) token sequence; positions are ignored.
inline uint64_t token_signature(const std::vector<Token>& tokens) {
  uint64_t h = kFnvOffset;
  for (const Token& t : tokens) {
    h = fnv1a64_mix(static_cast<uint64_t>(t.kind), h);
    h = fnv1a64(t.text, h);
    h ^= 0x9e3779b97f4a7c15ull;
    h *= kFnvPrime;
  }
  return h;
}

struct SourceComponent {
  std::string id;
  Role role = Role::Statement;
  std::string file;
  int start_line = 0;
  int end_line = 0;
  std::string raw_text;
  std::vector<Token> tokens;
  AstNode ast;
  uint64_t signature = 0;

  void finalize() {
    ast = parse_ast(tokens);
    signature = token_signature(tokens);
  }
};

// Syntactic equivalence: equal (kind, text) sequences. Whitespace, comments
// and positions do not participate.
inline bool syntactically_equivalent(const SourceComponent& a, const SourceComponent& b) {
  if (a.signature != b.signature) return false;
  if (a.tokens.size() != b.tokens.size()) return false;
  for (size_t i = 0; i < a.tokens.size(); ++i) {
    if (!(a.tokens[i] == b.tokens[i])) return false;
  }
  return true;
}

inline bool tokens_equivalent(const std::vector<Token>& a, const std::vector<Token>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

}  // namespace ingrank
