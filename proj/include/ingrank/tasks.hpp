#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ingrank/corpus.hpp"
#include "ingrank/diff.hpp"
#include "ingrank/util.hpp"

namespace ingrank {

inline constexpr int kTaskFormatVersion = 1;

// One ranking problem: the removed statement is the modification point, the
// inserted statement is the ground-truth correct ingredient, the enclosing
// method is the recipient context.
struct RepairTask {
  std::string id;
  std::string project;
  std::string modification_point_id;  // statement component in the corpus
  std::string recipient_context_id;   // enclosing method component
  SourceComponent correct_ingredient;  // synthetic, built from the added line
  std::string file;
  long removed_line = 0;
  std::string removed_text;
  std::string added_text;
};

struct TaskRejection {
  std::string source;  // diff label / hunk position
  std::string reason;
  std::string detail;
};

// Rejection reason codes.
namespace reject {
inline constexpr const char* kNotOneStatementReplacement = "not-one-statement-replacement";
inline constexpr const char* kFileNotInCorpus = "file-not-in-corpus";
inline constexpr const char* kNotAStatement = "not-a-statement";
inline constexpr const char* kEquivalentReplacement = "equivalent-replacement";
inline constexpr const char* kIngredientNotInApplication = "ingredient-not-in-application";
inline constexpr const char* kIngredientInRecipientContext = "ingredient-in-recipient-context";
inline constexpr const char* kNoRecipientContext = "no-recipient-context";
}  // namespace reject

struct ExtractionResult {
  std::vector<RepairTask> tasks;
  std::vector<TaskRejection> rejections;
};

namespace detail {

inline bool statement_like(const std::vector<Token>& tokens) {
  if (tokens.empty()) return false;
  const Token& last = tokens.back();
  if (last.kind == TokenKind::Separator && last.text == ";") return true;
  // control-flow header: keyword (...) without a body
  const Token& first = tokens.front();
  return first.kind == TokenKind::Keyword && is_control_header_keyword(first.text) &&
         last.kind == TokenKind::Separator && last.text == ")";
}

}  // namespace detail

// Applies the one-statement-replacement shape check and the three inclusion
// filters; every hunk either becomes a task or a logged rejection.
inline ExtractionResult extract_tasks(const std::vector<DiffHunk>& hunks,
                                      const CorpusIndex& corpus,
                                      const std::string& project = "default",
                                      const std::string& source_label = "") {
  ExtractionResult result;
  int ordinal = 0;
  for (size_t h = 0; h < hunks.size(); ++h) {
    const DiffHunk& hunk = hunks[h];
    std::string source = source_label.empty()
                             ? hunk.file_path + "@" + std::to_string(h)
                             : source_label + "#" + std::to_string(h);
    auto rejected = [&](const char* reason, const std::string& detail) {
      result.rejections.push_back({source, reason, detail});
    };

    if (hunk.removed.size() != 1 || hunk.added.size() != 1) {
      rejected(reject::kNotOneStatementReplacement,
               std::to_string(hunk.removed.size()) + " removed / " +
                   std::to_string(hunk.added.size()) + " added");
      continue;
    }
    if (!corpus.has_file(hunk.file_path)) {
      rejected(reject::kFileNotInCorpus, hunk.file_path);
      continue;
    }

    const DiffLine& removed = hunk.removed.front();
    const DiffLine& added = hunk.added.front();

    std::vector<Token> removed_tokens;
    std::vector<Token> added_tokens;
    try {
      removed_tokens = lex(removed.text);
      added_tokens = lex(added.text);
    } catch (const LexError& e) {
      rejected(reject::kNotAStatement, e.what());
      continue;
    }

    // the removed line must be exactly one pooled statement at that location
    const SourceComponent* modification_point = nullptr;
    for (size_t idx : corpus.statements_at(hunk.file_path, static_cast<int>(removed.number))) {
      const SourceComponent& candidate = corpus.component(idx);
      if (tokens_equivalent(candidate.tokens, removed_tokens)) {
        modification_point = &candidate;
        break;
      }
    }
    if (modification_point == nullptr) {
      rejected(reject::kNotAStatement,
               "removed line " + std::to_string(removed.number) + " of " + hunk.file_path);
      continue;
    }
    if (!detail::statement_like(added_tokens)) {
      rejected(reject::kNotAStatement, "added line: " + trim(added.text));
      continue;
    }

    const std::string& context_id = corpus.enclosing_context(modification_point->id);
    if (context_id == kTopLevelContext) {
      rejected(reject::kNoRecipientContext, modification_point->id);
      continue;
    }

    if (tokens_equivalent(removed_tokens, added_tokens)) {
      rejected(reject::kEquivalentReplacement, trim(added.text));
      continue;
    }
    if (!corpus.pool_contains_equivalent(added_tokens)) {
      rejected(reject::kIngredientNotInApplication, trim(added.text));
      continue;
    }
    bool in_recipient = false;
    for (size_t idx : corpus.statements_of(context_id)) {
      if (tokens_equivalent(corpus.component(idx).tokens, added_tokens)) {
        in_recipient = true;
        break;
      }
    }
    if (in_recipient) {
      rejected(reject::kIngredientInRecipientContext, trim(added.text));
      continue;
    }

    RepairTask task;
    task.id = project + "#" + std::to_string(ordinal++);
    task.project = project;
    task.modification_point_id = modification_point->id;
    task.recipient_context_id = context_id;
    task.file = hunk.file_path;
    task.removed_line = removed.number;
    task.removed_text = trim(removed.text);
    task.added_text = trim(added.text);
    task.correct_ingredient.id = "task:" + task.id + ":ingredient";
    task.correct_ingredient.role = Role::Statement;
    task.correct_ingredient.file = hunk.file_path;
    task.correct_ingredient.start_line = static_cast<int>(added.number);
    task.correct_ingredient.end_line = static_cast<int>(added.number);
    task.correct_ingredient.raw_text = task.added_text;
    task.correct_ingredient.tokens = std::move(added_tokens);
    task.correct_ingredient.finalize();
    result.tasks.push_back(std::move(task));
  }
  return result;
}

// Deterministic seeded sample of at most `limit` tasks per project. Selected
// tasks keep their original relative order.
inline std::vector<RepairTask> sample_tasks(const std::vector<RepairTask>& tasks,
                                            size_t limit, uint64_t seed) {
  std::map<std::string, std::vector<size_t>> by_project;
  for (size_t i = 0; i < tasks.size(); ++i) by_project[tasks[i].project].push_back(i);

  std::vector<size_t> selected;
  for (const auto& [project, indices] : by_project) {
    if (indices.size() <= limit) {
      selected.insert(selected.end(), indices.begin(), indices.end());
      continue;
    }
    std::vector<size_t> shuffled = indices;
    Rng rng(fnv1a64(project, fnv1a64_mix(seed, kFnvOffset)));
    for (size_t i = shuffled.size() - 1; i > 0; --i) {
      size_t j = rng.next_below(i + 1);
      std::swap(shuffled[i], shuffled[j]);
    }
    shuffled.resize(limit);
    std::sort(shuffled.begin(), shuffled.end());
    selected.insert(selected.end(), shuffled.begin(), shuffled.end());
  }
  std::sort(selected.begin(), selected.end());
  std::vector<RepairTask> out;
  out.reserve(selected.size());
  for (size_t i : selected) out.push_back(tasks[i]);
  return out;
}

// ---- persistence: line-delimited JSON ----

inline std::string serialize_tasks(const std::vector<RepairTask>& tasks) {
  std::string out;
  nlohmann::ordered_json header;
  header["format_version"] = kTaskFormatVersion;
  header["type"] = "repair-tasks";
  out += header.dump();
  out += '\n';
  for (const RepairTask& t : tasks) {
    nlohmann::ordered_json j;
    j["id"] = t.id;
    j["project"] = t.project;
    j["file"] = t.file;
    j["line"] = t.removed_line;
    j["removed"] = t.removed_text;
    j["added"] = t.added_text;
    out += j.dump();
    out += '\n';
  }
  return out;
}

inline std::string serialize_rejections(const std::vector<TaskRejection>& rejections) {
  std::string out;
  nlohmann::ordered_json header;
  header["format_version"] = kTaskFormatVersion;
  header["type"] = "task-rejections";
  out += header.dump();
  out += '\n';
  for (const TaskRejection& r : rejections) {
    nlohmann::ordered_json j;
    j["source"] = r.source;
    j["reason"] = r.reason;
    j["detail"] = r.detail;
    out += j.dump();
    out += '\n';
  }
  return out;
}

// Re-resolves serialized tasks against a corpus; tasks that no longer resolve
// are reported in `failures`.
inline std::vector<RepairTask> load_tasks(const std::string& content,
                                          const CorpusIndex& corpus,
                                          std::vector<std::string>* failures = nullptr) {
  std::vector<std::string> lines = split_lines(content);
  if (lines.empty()) throw DataError("empty task file");
  nlohmann::json header = nlohmann::json::parse(lines[0]);
  if (header.value("type", "") != std::string("repair-tasks"))
    throw DataError("not a task file");
  if (header.value("format_version", 0) != kTaskFormatVersion)
    throw DataError("unsupported task file version");

  std::vector<RepairTask> tasks;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    nlohmann::json j = nlohmann::json::parse(lines[i]);
    DiffHunk hunk;
    hunk.file_path = j.at("file").get<std::string>();
    hunk.removed.push_back({j.at("line").get<long>(), j.at("removed").get<std::string>()});
    hunk.added.push_back({j.at("line").get<long>(), j.at("added").get<std::string>()});
    ExtractionResult one =
        extract_tasks({hunk}, corpus, j.at("project").get<std::string>(), "reload");
    if (one.tasks.size() == 1) {
      one.tasks.front().id = j.at("id").get<std::string>();
      one.tasks.front().correct_ingredient.id =
          "task:" + one.tasks.front().id + ":ingredient";
      tasks.push_back(std::move(one.tasks.front()));
    } else if (failures != nullptr) {
      std::string why = one.rejections.empty() ? "unknown" : one.rejections.front().reason;
      failures->push_back(j.at("id").get<std::string>() + ": " + why);
    }
  }
  return tasks;
}

}  // namespace ingrank
