#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ingrank/metrics/doc2vec.hpp"
#include "ingrank/metrics/similarity.hpp"
#include "ingrank/ranking.hpp"
#include "ingrank/util.hpp"

namespace ingrank {

// Declarative run configuration. A JSON config file sets any subset of these;
// command-line flags override individual fields afterwards.
struct RunConfig {
  std::string corpus_root;
  std::vector<std::string> globs{"**/*.java"};
  std::vector<MetricKind> metrics{MetricKind::Deckard, MetricKind::Lcs,
                                  MetricKind::Tfidf, MetricKind::Doc2vec};
  bool run_combined = true;
  MetricKind combined_context = MetricKind::Tfidf;
  MetricKind combined_ingredient = MetricKind::Tfidf;
  int statement_dimension = 128;
  int context_dimension = 300;
  int window = 5;
  int epochs = 20;
  int negatives = 5;
  int min_count = 1;
  int infer_epochs = 50;
  uint64_t seed = 1;
  size_t sample_limit = 10;
  size_t deckard_task_limit = 0;
  size_t bins = 20;
  int jobs = 1;
  TieMode tie_mode = TieMode::CorpusOrder;

  Doc2vecConfig statement_embedding_config() const {
    Doc2vecConfig c;
    c.dimension = statement_dimension;
    c.window = window;
    c.epochs = epochs;
    c.negatives = negatives;
    c.min_count = min_count;
    c.infer_epochs = infer_epochs;
    c.seed = seed;
    return c;
  }
  Doc2vecConfig context_embedding_config() const {
    Doc2vecConfig c = statement_embedding_config();
    c.dimension = context_dimension;
    return c;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["corpus_root"] = corpus_root;
    j["globs"] = globs;
    std::vector<std::string> names;
    for (MetricKind m : metrics) names.push_back(to_string(m));
    j["metrics"] = names;
    j["run_combined"] = run_combined;
    j["combined_context"] = to_string(combined_context);
    j["combined_ingredient"] = to_string(combined_ingredient);
    j["statement_dimension"] = statement_dimension;
    j["context_dimension"] = context_dimension;
    j["window"] = window;
    j["epochs"] = epochs;
    j["negatives"] = negatives;
    j["min_count"] = min_count;
    j["infer_epochs"] = infer_epochs;
    j["seed"] = seed;
    j["sample_limit"] = sample_limit;
    j["deckard_task_limit"] = deckard_task_limit;
    j["bins"] = bins;
    j["jobs"] = jobs;
    j["tie_mode"] = to_string(tie_mode);
    return j;
  }

  static RunConfig from_json(const nlohmann::json& j) {
    RunConfig config;
    config.corpus_root = j.value("corpus_root", config.corpus_root);
    config.globs = j.value("globs", config.globs);
    if (j.contains("metrics")) {
      config.metrics.clear();
      for (const auto& name : j.at("metrics")) {
        config.metrics.push_back(metric_from_string(name.get<std::string>()));
      }
    }
    config.run_combined = j.value("run_combined", config.run_combined);
    if (j.contains("combined_context"))
      config.combined_context = metric_from_string(j.at("combined_context").get<std::string>());
    if (j.contains("combined_ingredient"))
      config.combined_ingredient =
          metric_from_string(j.at("combined_ingredient").get<std::string>());
    config.statement_dimension = j.value("statement_dimension", config.statement_dimension);
    config.context_dimension = j.value("context_dimension", config.context_dimension);
    config.window = j.value("window", config.window);
    config.epochs = j.value("epochs", config.epochs);
    config.negatives = j.value("negatives", config.negatives);
    config.min_count = j.value("min_count", config.min_count);
    config.infer_epochs = j.value("infer_epochs", config.infer_epochs);
    config.seed = j.value("seed", config.seed);
    config.sample_limit = j.value("sample_limit", config.sample_limit);
    config.deckard_task_limit = j.value("deckard_task_limit", config.deckard_task_limit);
    config.bins = j.value("bins", config.bins);
    config.jobs = j.value("jobs", config.jobs);
    if (j.contains("tie_mode")) {
      std::string mode = j.at("tie_mode").get<std::string>();
      if (mode == "corpus-order") config.tie_mode = TieMode::CorpusOrder;
      else if (mode == "pessimistic") config.tie_mode = TieMode::Pessimistic;
      else throw UsageError("unknown tie mode: " + mode);
    }
    return config;
  }

  static RunConfig load(const std::filesystem::path& path) {
    try {
      return from_json(nlohmann::json::parse(read_file(path)));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config parse error in " + path.string() + ": " + e.what());
    }
  }
};

}  // namespace ingrank
