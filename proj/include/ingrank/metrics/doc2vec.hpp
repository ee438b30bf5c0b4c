#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ingrank/component.hpp"
#include "ingrank/errors.hpp"
#include "ingrank/metrics/vectors.hpp"
#include "ingrank/util.hpp"

namespace ingrank {

inline constexpr int kEmbeddingFormatVersion = 1;

struct Doc2vecConfig {
  int dimension = 128;
  int window = 5;
  int epochs = 20;
  int negatives = 5;
  int min_count = 1;
  double alpha = 0.025;
  double min_alpha = 1e-4;
  int infer_epochs = 50;
  uint64_t seed = 1;
};

// Paragraph vectors, distributed bag-of-words flavor with negative sampling:
// the document vector predicts each of its tokens; token vectors are learned
// jointly through interleaved skip-gram steps over the window. Training is a
// single sequential job, so a fixed seed fixes every float.
class Doc2vecModel {
 public:
  template <typename ComponentRange>
  static Doc2vecModel train(const ComponentRange& corpus, const Doc2vecConfig& config) {
    std::vector<std::vector<std::string>> documents;
    for (const SourceComponent* c : corpus) {
      std::vector<std::string> doc;
      doc.reserve(c->tokens.size());
      for (const Token& t : c->tokens) doc.push_back(t.text);
      documents.push_back(std::move(doc));
    }
    return train_documents(documents, config);
  }

  static Doc2vecModel train_documents(const std::vector<std::vector<std::string>>& documents,
                                      const Doc2vecConfig& config) {
    if (documents.size() < 2)
      throw DataError("embedding training requires at least 2 components");

    Doc2vecModel model;
    model.config_ = config;

    std::unordered_map<std::string, uint64_t> counts;
    for (const auto& doc : documents)
      for (const std::string& t : doc) ++counts[t];
    if (counts.size() < 10)
      throw DataError("embedding training requires at least 10 distinct tokens");

    // vocabulary ordered by (count desc, text asc) for stable ids
    std::vector<std::pair<std::string, uint64_t>> vocab_entries(counts.begin(), counts.end());
    std::erase_if(vocab_entries, [&](const auto& e) {
      return e.second < static_cast<uint64_t>(config.min_count);
    });
    if (vocab_entries.size() < 2)
      throw DataError("embedding vocabulary collapsed below 2 tokens");
    std::sort(vocab_entries.begin(), vocab_entries.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    for (const auto& [word, count] : vocab_entries) {
      model.vocabulary_.emplace(word, static_cast<uint32_t>(model.words_.size()));
      model.words_.push_back(word);
      model.counts_.push_back(count);
    }
    model.rebuild_negative_table();

    const size_t v = model.words_.size();
    const size_t d = static_cast<size_t>(config.dimension);
    Rng rng(config.seed);
    model.word_vectors_.resize(v * d);
    for (double& x : model.word_vectors_) x = (rng.next_unit() - 0.5) / static_cast<double>(d);
    model.output_weights_.assign(v * d, 0.0);

    // encode documents against the vocabulary
    std::vector<std::vector<uint32_t>> encoded(documents.size());
    size_t total_positions = 0;
    for (size_t i = 0; i < documents.size(); ++i) {
      for (const std::string& t : documents[i]) {
        auto it = model.vocabulary_.find(t);
        if (it != model.vocabulary_.end()) encoded[i].push_back(it->second);
      }
      total_positions += encoded[i].size();
    }
    if (total_positions == 0) throw DataError("embedding corpus has no in-vocabulary tokens");

    std::vector<double> doc_vectors(documents.size() * d);
    for (double& x : doc_vectors) x = (rng.next_unit() - 0.5) / static_cast<double>(d);

    const uint64_t planned = static_cast<uint64_t>(config.epochs) * total_positions;
    uint64_t processed = 0;
    std::vector<double> gradient(d);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      for (size_t doc = 0; doc < encoded.size(); ++doc) {
        const std::vector<uint32_t>& tokens = encoded[doc];
        double* dv = doc_vectors.data() + doc * d;
        for (size_t pos = 0; pos < tokens.size(); ++pos) {
          double progress = static_cast<double>(processed) / static_cast<double>(planned);
          double alpha = std::max(config.min_alpha, config.alpha * (1.0 - progress));
          ++processed;

          // document -> token
          model.train_pair(dv, tokens[pos], alpha, rng, gradient,
                           model.output_weights_.data());

          // skip-gram over a reduced window: context token -> center token
          if (config.window > 0 && tokens.size() > 1) {
            size_t shrink = rng.next_below(static_cast<uint64_t>(config.window));
            size_t reach = static_cast<size_t>(config.window) - shrink;
            size_t from = pos >= reach ? pos - reach : 0;
            size_t to = std::min(tokens.size() - 1, pos + reach);
            for (size_t ctx = from; ctx <= to; ++ctx) {
              if (ctx == pos) continue;
              double* wv = model.word_vectors_.data() + tokens[ctx] * d;
              model.train_pair(wv, tokens[pos], alpha, rng, gradient,
                               model.output_weights_.data());
            }
          }
        }
      }
    }
    return model;
  }

  // Gradient inference of a document vector against the frozen output
  // weights. The per-call seed derives from the model seed and the token
  // sequence, so the same component always infers the same vector.
  DenseVec infer(const SourceComponent& component) const {
    std::vector<std::string> tokens;
    tokens.reserve(component.tokens.size());
    for (const Token& t : component.tokens) tokens.push_back(t.text);
    return infer_tokens(tokens);
  }

  DenseVec infer_tokens(const std::vector<std::string>& tokens) const {
    const size_t d = static_cast<size_t>(config_.dimension);
    std::vector<uint32_t> encoded;
    uint64_t seed = fnv1a64_mix(config_.seed, kFnvOffset);
    for (const std::string& t : tokens) {
      seed = fnv1a64(t, seed);
      auto it = vocabulary_.find(t);
      if (it != vocabulary_.end()) encoded.push_back(it->second);
    }
    DenseVec result;
    result.values.assign(d, 0.0);
    if (encoded.empty()) {
      result.flagged = true;  // out-of-vocabulary-only component
      return result;
    }
    Rng rng(seed);
    for (double& x : result.values) x = (rng.next_unit() - 0.5) / static_cast<double>(d);

    const uint64_t planned =
        static_cast<uint64_t>(config_.infer_epochs) * encoded.size();
    uint64_t processed = 0;
    std::vector<double> gradient(d);
    for (int epoch = 0; epoch < config_.infer_epochs; ++epoch) {
      for (uint32_t token : encoded) {
        double progress = static_cast<double>(processed) / static_cast<double>(planned);
        double alpha = std::max(config_.min_alpha, config_.alpha * (1.0 - progress));
        ++processed;
        train_pair(result.values.data(), token, alpha, rng, gradient, nullptr);
      }
    }
    return result;
  }

  const Doc2vecConfig& config() const { return config_; }
  size_t vocabulary_size() const { return words_.size(); }
  bool in_vocabulary(const std::string& word) const { return vocabulary_.count(word) > 0; }

  // token vector (input side), mainly for inspection and tests
  std::vector<double> word_vector(const std::string& word) const {
    auto it = vocabulary_.find(word);
    if (it == vocabulary_.end()) throw DataError("word not in vocabulary: " + word);
    const size_t d = static_cast<size_t>(config_.dimension);
    return std::vector<double>(word_vectors_.begin() + it->second * d,
                               word_vectors_.begin() + (it->second + 1) * d);
  }

  const std::vector<double>& word_matrix() const { return word_vectors_; }

  // ---- persistence ----

  std::string serialize() const {
    nlohmann::ordered_json j;
    j["format_version"] = kEmbeddingFormatVersion;
    j["type"] = "doc2vec-model";
    j["config"] = {{"dimension", config_.dimension},
                   {"window", config_.window},
                   {"epochs", config_.epochs},
                   {"negatives", config_.negatives},
                   {"min_count", config_.min_count},
                   {"alpha", config_.alpha},
                   {"min_alpha", config_.min_alpha},
                   {"infer_epochs", config_.infer_epochs},
                   {"seed", config_.seed}};
    j["vocabulary"] = words_;
    j["counts"] = counts_;
    j["word_vectors"] = word_vectors_;
    j["output_weights"] = output_weights_;
    return j.dump();
  }

  void save(const std::filesystem::path& path) const {
    write_file_atomic(path, serialize());
  }

  static Doc2vecModel load(const std::filesystem::path& path) {
    nlohmann::json j = nlohmann::json::parse(read_file(path));
    if (j.value("format_version", 0) != kEmbeddingFormatVersion)
      throw DataError("unsupported embedding model version in " + path.string());
    if (j.value("type", "") != std::string("doc2vec-model"))
      throw DataError("not an embedding model file: " + path.string());
    Doc2vecModel model;
    const auto& c = j.at("config");
    model.config_.dimension = c.at("dimension").get<int>();
    model.config_.window = c.at("window").get<int>();
    model.config_.epochs = c.at("epochs").get<int>();
    model.config_.negatives = c.at("negatives").get<int>();
    model.config_.min_count = c.at("min_count").get<int>();
    model.config_.alpha = c.at("alpha").get<double>();
    model.config_.min_alpha = c.at("min_alpha").get<double>();
    model.config_.infer_epochs = c.at("infer_epochs").get<int>();
    model.config_.seed = c.at("seed").get<uint64_t>();
    model.words_ = j.at("vocabulary").get<std::vector<std::string>>();
    model.counts_ = j.at("counts").get<std::vector<uint64_t>>();
    model.word_vectors_ = j.at("word_vectors").get<std::vector<double>>();
    model.output_weights_ = j.at("output_weights").get<std::vector<double>>();
    for (uint32_t i = 0; i < model.words_.size(); ++i)
      model.vocabulary_.emplace(model.words_[i], i);
    model.rebuild_negative_table();
    return model;
  }

  uint64_t content_hash() const { return fnv1a64(serialize()); }

 private:
  Doc2vecConfig config_;
  std::unordered_map<std::string, uint32_t> vocabulary_;
  std::vector<std::string> words_;
  std::vector<uint64_t> counts_;
  std::vector<double> word_vectors_;    // |V| x d, input side
  std::vector<double> output_weights_;  // |V| x d, negative-sampling side
  std::vector<double> negative_cumulative_;

  void rebuild_negative_table() {
    negative_cumulative_.clear();
    negative_cumulative_.reserve(counts_.size());
    double cumulative = 0.0;
    for (uint64_t count : counts_) {
      cumulative += std::pow(static_cast<double>(count), 0.75);
      negative_cumulative_.push_back(cumulative);
    }
  }

  uint32_t sample_negative(Rng& rng) const {
    double x = rng.next_unit() * negative_cumulative_.back();
    auto it = std::lower_bound(negative_cumulative_.begin(), negative_cumulative_.end(), x);
    size_t idx = static_cast<size_t>(it - negative_cumulative_.begin());
    if (idx >= negative_cumulative_.size()) idx = negative_cumulative_.size() - 1;
    return static_cast<uint32_t>(idx);
  }

  static double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

  // One positive + `negatives` sampled updates of (input, output[target]).
  // `mutable_outputs` is null during inference: the output matrix stays frozen.
  void train_pair(double* input, uint32_t target, double alpha, Rng& rng,
                  std::vector<double>& gradient, double* mutable_outputs) const {
    const size_t d = static_cast<size_t>(config_.dimension);
    std::fill(gradient.begin(), gradient.end(), 0.0);
    for (int n = 0; n <= config_.negatives; ++n) {
      uint32_t candidate;
      double label;
      if (n == 0) {
        candidate = target;
        label = 1.0;
      } else {
        candidate = sample_negative(rng);
        if (candidate == target) continue;
        label = 0.0;
      }
      const double* out = output_weights_.data() + candidate * d;
      double f = 0.0;
      for (size_t k = 0; k < d; ++k) f += input[k] * out[k];
      double g = (label - sigmoid(f)) * alpha;
      for (size_t k = 0; k < d; ++k) gradient[k] += g * out[k];
      if (mutable_outputs != nullptr) {
        double* row = mutable_outputs + candidate * d;
        for (size_t k = 0; k < d; ++k) row[k] += g * input[k];
      }
    }
    for (size_t k = 0; k < d; ++k) input[k] += gradient[k];
  }
};

}  // namespace ingrank
