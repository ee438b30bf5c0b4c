#pragma once

#include <mutex>
#include <string>
#include <unordered_map>

#include "ingrank/component.hpp"
#include "ingrank/errors.hpp"
#include "ingrank/metrics/deckard.hpp"
#include "ingrank/metrics/doc2vec.hpp"
#include "ingrank/metrics/lcs.hpp"
#include "ingrank/metrics/tfidf.hpp"
#include "ingrank/metrics/vectors.hpp"

namespace ingrank {

enum class MetricKind { Lcs, Tfidf, Doc2vec, Deckard, Combined };

inline const char* to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Lcs: return "lcs";
    case MetricKind::Tfidf: return "tfidf";
    case MetricKind::Doc2vec: return "doc2vec";
    case MetricKind::Deckard: return "deckard";
    case MetricKind::Combined: return "combined";
  }
  return "?";
}

inline MetricKind metric_from_string(std::string_view name) {
  if (name == "lcs") return MetricKind::Lcs;
  if (name == "tfidf") return MetricKind::Tfidf;
  if (name == "doc2vec") return MetricKind::Doc2vec;
  if (name == "deckard") return MetricKind::Deckard;
  if (name == "combined") return MetricKind::Combined;
  throw UsageError("unknown metric: " + std::string(name));
}

// Fitted models for one corpus, with per-component vector caches. Statement
// and method pools are fitted separately, so lookups go by component role.
// prepare() fills the caches up front; afterwards reads are lock-free.
class ModelContext {
 public:
  const TfidfModel* tfidf_statements = nullptr;
  const TfidfModel* tfidf_contexts = nullptr;
  const Doc2vecModel* embedding_statements = nullptr;
  const Doc2vecModel* embedding_contexts = nullptr;
  bool deckard_extended = false;

  const TfidfModel* tfidf_for(Role role) const {
    return role == Role::Statement ? tfidf_statements : tfidf_contexts;
  }
  const Doc2vecModel* embedding_for(Role role) const {
    return role == Role::Statement ? embedding_statements : embedding_contexts;
  }

  template <typename ComponentRange>
  void prepare_tfidf(const ComponentRange& components) {
    for (const SourceComponent* c : components) {
      const TfidfModel* model = tfidf_for(c->role);
      if (model == nullptr) continue;
      tfidf_cache_[c->id] = model->transform(*c);
    }
  }

  template <typename ComponentRange>
  void prepare_embeddings(const ComponentRange& components) {
    for (const SourceComponent* c : components) {
      const Doc2vecModel* model = embedding_for(c->role);
      if (model == nullptr) continue;
      embedding_cache_[c->id] = model->infer(*c);
    }
  }

  SparseVec tfidf_vector(const SourceComponent& component) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = tfidf_cache_.find(component.id);
      if (it != tfidf_cache_.end()) return it->second;
    }
    const TfidfModel* model = tfidf_for(component.role);
    if (model == nullptr)
      throw UsageError("tfidf model not fitted for this component role");
    SparseVec vec = model->transform(component);
    std::lock_guard<std::mutex> lock(mutex_);
    tfidf_cache_.emplace(component.id, vec);
    return vec;
  }

  DenseVec embedding_vector(const SourceComponent& component) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = embedding_cache_.find(component.id);
      if (it != embedding_cache_.end()) return it->second;
    }
    const Doc2vecModel* model = embedding_for(component.role);
    if (model == nullptr)
      throw UsageError("embedding model not trained for this component role");
    DenseVec vec = model->infer(component);
    std::lock_guard<std::mutex> lock(mutex_);
    embedding_cache_.emplace(component.id, vec);
    return vec;
  }

 private:
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, SparseVec> tfidf_cache_;
  mutable std::unordered_map<std::string, DenseVec> embedding_cache_;
};

// Pairwise similarity under one metric. Symmetric in (a, b) for every kind.
inline double similarity(MetricKind kind, const SourceComponent& a,
                         const SourceComponent& b, const ModelContext& context) {
  switch (kind) {
    case MetricKind::Lcs:
      return lcs_similarity(a.raw_text, b.raw_text);
    case MetricKind::Tfidf: {
      SparseVec u = context.tfidf_vector(a);
      SparseVec v = context.tfidf_vector(b);
      return cosine(u, v);
    }
    case MetricKind::Doc2vec: {
      DenseVec u = context.embedding_vector(a);
      DenseVec v = context.embedding_vector(b);
      return cosine(u, v);
    }
    case MetricKind::Deckard: {
      DenseVec u = deckard_vector(a.ast, context.deckard_extended);
      DenseVec v = deckard_vector(b.ast, context.deckard_extended);
      return cosine(u, v);
    }
    case MetricKind::Combined:
      throw UsageError("combined is a ranking mode, not a pairwise metric");
  }
  throw UsageError("unreachable metric kind");
}

}  // namespace ingrank
