#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "ingrank/ranking.hpp"
#include "ingrank/util.hpp"

namespace ingrank {

inline constexpr int kRankingFormatVersion = 1;

inline RankingLevel ranking_level_from_string(std::string_view name) {
  if (name == "ingredient") return RankingLevel::Ingredient;
  if (name == "context") return RankingLevel::Context;
  if (name == "combined") return RankingLevel::Combined;
  throw DataError("unknown ranking level: " + std::string(name));
}

inline nlohmann::ordered_json ranking_to_json(const Ranking& ranking) {
  nlohmann::ordered_json j;
  j["format_version"] = kRankingFormatVersion;
  j["type"] = "ranking";
  j["task"] = ranking.task_id;
  j["metric"] = to_string(ranking.metric);
  j["level"] = to_string(ranking.level);
  if (ranking.correct_rank) {
    j["correct_rank"] = *ranking.correct_rank;
  } else {
    j["correct_rank"] = nullptr;
  }
  nlohmann::ordered_json candidates = nlohmann::ordered_json::array();
  for (const RankedCandidate& c : ranking.candidates) {
    candidates.push_back({c.component_id, c.score});
  }
  j["candidates"] = candidates;
  nlohmann::ordered_json excluded = nlohmann::ordered_json::array();
  for (const Exclusion& e : ranking.excluded) {
    excluded.push_back({e.component_id, e.reason});
  }
  j["excluded"] = excluded;
  return j;
}

inline Ranking ranking_from_json(const nlohmann::json& j) {
  if (j.value("format_version", 0) != kRankingFormatVersion)
    throw DataError("unsupported ranking format version");
  Ranking ranking;
  ranking.task_id = j.at("task").get<std::string>();
  ranking.metric = metric_from_string(j.at("metric").get<std::string>());
  ranking.level = ranking_level_from_string(j.at("level").get<std::string>());
  if (!j.at("correct_rank").is_null())
    ranking.correct_rank = j.at("correct_rank").get<size_t>();
  for (const auto& c : j.at("candidates")) {
    ranking.candidates.push_back({c[0].get<std::string>(), c[1].get<double>()});
  }
  for (const auto& e : j.at("excluded")) {
    ranking.excluded.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
  }
  return ranking;
}

// Identity of one cached ranking: corpus content, fitted models, task, metric,
// level and the knobs that change candidate order.
struct CacheKey {
  uint64_t index_hash = 0;
  uint64_t statement_model_hash = 0;
  uint64_t context_model_hash = 0;
  std::string task_id;
  std::string metric;
  std::string level;
  std::string tie_mode;
  bool deckard_extended = false;

  std::string canonical() const {
    return to_hex(index_hash) + "|" + to_hex(statement_model_hash) + "|" +
           to_hex(context_model_hash) + "|" + task_id + "|" + metric + "|" + level +
           "|" + tie_mode + "|" + (deckard_extended ? "x" : "-");
  }
  uint64_t digest() const { return fnv1a64(canonical()); }
};

// One JSON file per ranking, named by the key digest. Writes are atomic, so a
// killed run leaves either a complete entry or none.
class ScoreCache {
 public:
  explicit ScoreCache(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::filesystem::create_directories(directory_);
  }

  const std::filesystem::path& directory() const { return directory_; }

  std::optional<Ranking> get(const CacheKey& key) const {
    std::filesystem::path path = entry_path(key);
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
      nlohmann::json j = nlohmann::json::parse(read_file(path));
      if (j.value("key", "") != key.canonical()) return std::nullopt;  // digest collision
      return ranking_from_json(j.at("ranking"));
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable entries are treated as misses
    }
  }

  void put(const CacheKey& key, const Ranking& ranking) const {
    nlohmann::ordered_json j;
    j["key"] = key.canonical();
    j["ranking"] = ranking_to_json(ranking);
    write_file_atomic(entry_path(key), j.dump());
  }

 private:
  std::filesystem::path directory_;

  std::filesystem::path entry_path(const CacheKey& key) const {
    return directory_ / (to_hex(key.digest()) + ".json");
  }
};

}  // namespace ingrank
