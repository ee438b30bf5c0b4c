#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ingrank/errors.hpp"

namespace ingrank {

// Sparse non-negative weight vector, entries sorted by term id.
struct SparseVec {
  std::vector<std::pair<uint32_t, double>> entries;
  bool flagged = false;  // set for zero-token components

  double norm() const {
    double sum = 0.0;
    for (const auto& [id, w] : entries) sum += w * w;
    return std::sqrt(sum);
  }
  bool zero() const { return entries.empty(); }
};

struct DenseVec {
  std::vector<double> values;
  bool flagged = false;  // set for out-of-vocabulary-only components

  double norm() const {
    double sum = 0.0;
    for (double v : values) sum += v * v;
    return std::sqrt(sum);
  }
  bool zero() const {
    for (double v : values)
      if (v != 0.0) return false;
    return true;
  }
};

inline double dot(const SparseVec& u, const SparseVec& v) {
  double sum = 0.0;
  size_t i = 0, j = 0;
  while (i < u.entries.size() && j < v.entries.size()) {
    if (u.entries[i].first == v.entries[j].first) {
      sum += u.entries[i].second * v.entries[j].second;
      ++i;
      ++j;
    } else if (u.entries[i].first < v.entries[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

inline double dot(const DenseVec& u, const DenseVec& v) {
  if (u.values.size() != v.values.size())
    throw DataError("cosine requires equal dimensionality");
  double sum = 0.0;
  for (size_t i = 0; i < u.values.size(); ++i) sum += u.values[i] * v.values[i];
  return sum;
}

template <typename Vec>
inline double cosine(const Vec& u, const Vec& v) {
  double nu = u.norm();
  double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw DataError("undefined cosine for zero vector");
  return dot(u, v) / (nu * nv);
}

}  // namespace ingrank
