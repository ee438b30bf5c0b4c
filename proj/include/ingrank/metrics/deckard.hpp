#pragma once

#include <cstdint>
#include <vector>

#include "ingrank/ast.hpp"
#include "ingrank/metrics/vectors.hpp"

namespace ingrank {

// Characteristic vector over the AST: occurrence count of each node kind, in
// enum order. Extended mode appends parent-child kind-pair counts
// (kAstKindCount^2 extra dimensions).
inline std::vector<uint32_t> deckard_counts(const AstNode& root, bool extended = false) {
  size_t dims = static_cast<size_t>(kAstKindCount);
  if (extended) dims += static_cast<size_t>(kAstKindCount) * kAstKindCount;
  std::vector<uint32_t> counts(dims, 0);

  struct Frame {
    const AstNode* node;
    int parent_kind;  // -1 at the root
  };
  std::vector<Frame> stack{{&root, -1}};
  while (!stack.empty()) {
    Frame frame = stack.back();
    stack.pop_back();
    int kind = static_cast<int>(frame.node->kind);
    ++counts[static_cast<size_t>(kind)];
    if (extended && frame.parent_kind >= 0) {
      size_t pair_index = static_cast<size_t>(kAstKindCount) +
                          static_cast<size_t>(frame.parent_kind) * kAstKindCount +
                          static_cast<size_t>(kind);
      ++counts[pair_index];
    }
    // push in reverse so traversal order matches document order (counts are
    // order-blind, but determinism is free this way)
    for (auto it = frame.node->children.rbegin(); it != frame.node->children.rend(); ++it) {
      stack.push_back({&*it, kind});
    }
  }
  return counts;
}

inline DenseVec deckard_vector(const AstNode& root, bool extended = false) {
  std::vector<uint32_t> counts = deckard_counts(root, extended);
  DenseVec vec;
  vec.values.reserve(counts.size());
  for (uint32_t c : counts) vec.values.push_back(static_cast<double>(c));
  return vec;
}

}  // namespace ingrank
