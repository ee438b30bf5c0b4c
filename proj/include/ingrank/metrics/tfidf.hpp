#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "ingrank/component.hpp"
#include "ingrank/errors.hpp"
#include "ingrank/metrics/vectors.hpp"

namespace ingrank {

// Token-level TFIDF fitted over one document pool. Each component is a
// document; tf is the raw token count, idf = ln((1+N)/(1+df)) + 1, and the
// final vectors are L2-normalized.
class TfidfModel {
 public:
  template <typename ComponentRange>
  static TfidfModel fit(const ComponentRange& pool) {
    TfidfModel model;
    std::unordered_map<std::string, uint32_t> document_frequency;
    size_t n_docs = 0;
    for (const SourceComponent* c : pool) {
      ++n_docs;
      std::unordered_map<std::string, bool> seen;
      for (const Token& t : c->tokens) {
        if (!seen.emplace(t.text, true).second) continue;
        ++document_frequency[t.text];
      }
    }
    if (n_docs == 0) throw DataError("tfidf fit requires a non-empty pool");
    model.n_docs_ = n_docs;

    // deterministic term ids: sorted vocabulary
    std::vector<std::string> terms;
    terms.reserve(document_frequency.size());
    for (const auto& [term, df] : document_frequency) terms.push_back(term);
    std::sort(terms.begin(), terms.end());
    model.idf_.reserve(terms.size());
    for (const std::string& term : terms) {
      uint32_t id = static_cast<uint32_t>(model.idf_.size());
      model.vocabulary_.emplace(term, id);
      uint32_t df = document_frequency[term];
      model.idf_.push_back(
          std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) +
          1.0);
    }
    return model;
  }

  // L2-normalized tf-idf vector. Tokens outside the fitted vocabulary are
  // dropped; a component with no in-vocabulary tokens gets a flagged zero
  // vector.
  SparseVec transform(const SourceComponent& component) const {
    return transform_tokens(component.tokens);
  }

  SparseVec transform_tokens(const std::vector<Token>& tokens) const {
    std::unordered_map<uint32_t, double> counts;
    for (const Token& t : tokens) {
      auto it = vocabulary_.find(t.text);
      if (it == vocabulary_.end()) continue;
      counts[it->second] += 1.0;
    }
    SparseVec vec;
    if (counts.empty()) {
      vec.flagged = true;
      return vec;
    }
    vec.entries.reserve(counts.size());
    for (const auto& [id, tf] : counts) {
      vec.entries.emplace_back(id, tf * idf_[id]);
    }
    std::sort(vec.entries.begin(), vec.entries.end());
    double norm = vec.norm();
    for (auto& [id, w] : vec.entries) w /= norm;
    return vec;
  }

  double idf(const std::string& term) const {
    auto it = vocabulary_.find(term);
    if (it == vocabulary_.end()) throw DataError("term not in vocabulary: " + term);
    return idf_[it->second];
  }

  size_t vocabulary_size() const { return vocabulary_.size(); }
  size_t document_count() const { return n_docs_; }

 private:
  std::unordered_map<std::string, uint32_t> vocabulary_;
  std::vector<double> idf_;
  size_t n_docs_ = 0;
};

}  // namespace ingrank
