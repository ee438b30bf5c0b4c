#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ingrank/component.hpp"
#include "ingrank/errors.hpp"
#include "ingrank/segment.hpp"
#include "ingrank/util.hpp"

namespace ingrank {

inline constexpr int kIndexFormatVersion = 1;

struct Diagnostic {
  std::string file;
  std::string message;
};

// Immutable store of all components of one application, with the statement
// pool (candidate repair ingredients), the context pool (candidate donor
// methods) and the statement -> enclosing method map.
class CorpusIndex {
 public:
  static CorpusIndex build(const std::filesystem::path& root,
                           const std::vector<std::string>& globs = {"**/*.java"}) {
    if (!std::filesystem::is_directory(root))
      throw DataError("corpus root is not a directory: " + root.string());

    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
      if (!entry.is_regular_file()) continue;
      std::string rel = std::filesystem::relative(entry.path(), root).generic_string();
      for (const std::string& glob : globs) {
        if (glob_match(glob, rel)) {
          files.push_back(rel);
          break;
        }
      }
    }
    std::sort(files.begin(), files.end());

    CorpusIndex index;
    index.root_ = root.generic_string();
    for (const std::string& rel : files) {
      std::string source = read_file(root / rel);
      index.ingest_file(rel, source);
    }
    index.finish_build();
    return index;
  }

  // Builds from in-memory (path, content) pairs; used by tests and fixtures.
  static CorpusIndex build_from_memory(
      const std::vector<std::pair<std::string, std::string>>& files) {
    CorpusIndex index;
    index.root_ = "<memory>";
    std::vector<std::pair<std::string, std::string>> sorted = files;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [rel, source] : sorted) index.ingest_file(rel, source);
    index.finish_build();
    return index;
  }

  const std::vector<SourceComponent>& components() const { return components_; }
  const std::vector<size_t>& statement_pool() const { return statement_pool_; }
  const std::vector<size_t>& context_pool() const { return context_pool_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  const std::vector<std::string>& files() const { return files_; }
  const std::string& root() const { return root_; }

  const SourceComponent& component(size_t index) const { return components_[index]; }

  const SourceComponent* find(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &components_[it->second];
  }

  size_t index_of(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw DataError("unknown component id: " + id);
    return it->second;
  }

  // Enclosing method id for a pooled statement; kTopLevelContext sentinel
  // when the statement is outside any method.
  const std::string& enclosing_context(const std::string& statement_id) const {
    auto it = containment_.find(statement_id);
    if (it == containment_.end())
      throw DataError("no containment entry for: " + statement_id);
    return it->second;
  }

  const std::unordered_map<std::string, std::string>& containment() const {
    return containment_;
  }

  // Statement component indexes inside a method, in corpus order.
  const std::vector<size_t>& statements_of(const std::string& method_id) const {
    static const std::vector<size_t> empty;
    auto it = statements_of_.find(method_id);
    return it == statements_of_.end() ? empty : it->second;
  }

  // Any pooled statement syntactically equivalent to `tokens`?
  bool pool_contains_equivalent(const std::vector<Token>& tokens) const {
    uint64_t sig = token_signature(tokens);
    auto [lo, hi] = pool_by_signature_.equal_range(sig);
    for (auto it = lo; it != hi; ++it) {
      if (tokens_equivalent(components_[it->second].tokens, tokens)) return true;
    }
    return false;
  }

  bool has_file(const std::string& rel_path) const {
    return std::binary_search(files_.begin(), files_.end(), rel_path);
  }

  // Pooled statements of `file` whose span covers `line`.
  std::vector<size_t> statements_at(const std::string& rel_path, int line) const {
    std::vector<size_t> hits;
    for (size_t idx : statement_pool_) {
      const SourceComponent& c = components_[idx];
      if (c.file == rel_path && c.start_line <= line && line <= c.end_line)
        hits.push_back(idx);
    }
    return hits;
  }

  uint64_t content_hash() const {
    uint64_t h = kFnvOffset;
    for (const SourceComponent& c : components_) {
      h = fnv1a64(c.id, h);
      h = fnv1a64_mix(c.signature, h);
    }
    return h;
  }

  // ---- persistence: line-delimited JSON, versioned ----

  std::string serialize() const {
    std::string out;
    nlohmann::ordered_json header;
    header["format_version"] = kIndexFormatVersion;
    header["type"] = "corpus-index";
    header["root"] = root_;
    header["files"] = files_;
    nlohmann::ordered_json diags = nlohmann::ordered_json::array();
    for (const Diagnostic& d : diagnostics_) {
      diags.push_back({{"file", d.file}, {"message", d.message}});
    }
    header["diagnostics"] = diags;
    out += header.dump();
    out += '\n';
    for (const SourceComponent& c : components_) {
      nlohmann::ordered_json j;
      j["id"] = c.id;
      j["role"] = to_string(c.role);
      j["file"] = c.file;
      j["span"] = {c.start_line, c.end_line};
      j["text"] = c.raw_text;
      nlohmann::ordered_json toks = nlohmann::ordered_json::array();
      for (const Token& t : c.tokens) {
        toks.push_back({to_string(t.kind), t.text, t.line, t.column});
      }
      j["tokens"] = toks;
      auto it = containment_.find(c.id);
      if (it != containment_.end()) {
        j["context"] = it->second;
      }
      out += j.dump();
      out += '\n';
    }
    return out;
  }

  void save(const std::filesystem::path& path) const {
    write_file_atomic(path, serialize());
  }

  static CorpusIndex load(const std::filesystem::path& path) {
    std::string content = read_file(path);
    std::vector<std::string> lines = split_lines(content);
    if (lines.empty()) throw DataError("empty index file: " + path.string());
    nlohmann::json header = nlohmann::json::parse(lines[0]);
    if (header.value("format_version", 0) != kIndexFormatVersion)
      throw DataError("unsupported index format version in " + path.string());
    if (header.value("type", "") != std::string("corpus-index"))
      throw DataError("not a corpus index file: " + path.string());

    CorpusIndex index;
    index.root_ = header.value("root", "");
    index.files_ = header.value("files", std::vector<std::string>{});
    for (const auto& d : header.value("diagnostics", nlohmann::json::array())) {
      index.diagnostics_.push_back({d.value("file", ""), d.value("message", "")});
    }
    for (size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      nlohmann::json j = nlohmann::json::parse(lines[i]);
      SourceComponent c;
      c.id = j.at("id").get<std::string>();
      c.role = role_from_string(j.at("role").get<std::string>());
      c.file = j.at("file").get<std::string>();
      c.start_line = j.at("span")[0].get<int>();
      c.end_line = j.at("span")[1].get<int>();
      c.raw_text = j.at("text").get<std::string>();
      for (const auto& t : j.at("tokens")) {
        Token tok;
        tok.kind = token_kind_from_string(t[0].get<std::string>());
        tok.text = t[1].get<std::string>();
        tok.line = t[2].get<int>();
        tok.column = t[3].get<int>();
        c.tokens.push_back(std::move(tok));
      }
      c.finalize();
      if (j.contains("context")) {
        index.containment_[c.id] = j["context"].get<std::string>();
      }
      index.components_.push_back(std::move(c));
    }
    index.rebuild_lookups();
    if (index.components_.empty()) throw DataError("empty corpus");
    return index;
  }

 private:
  std::string root_;
  std::vector<SourceComponent> components_;
  std::vector<std::string> files_;
  std::vector<size_t> statement_pool_;
  std::vector<size_t> context_pool_;
  std::unordered_map<std::string, std::string> containment_;
  std::unordered_map<std::string, size_t> by_id_;
  std::unordered_map<std::string, std::vector<size_t>> statements_of_;
  std::multimap<uint64_t, size_t> pool_by_signature_;
  std::vector<Diagnostic> diagnostics_;

  void ingest_file(const std::string& rel, const std::string& source) {
    SegmentResult seg;
    try {
      seg = segment_file(rel, source);
    } catch (const DataError& e) {
      diagnostics_.push_back({rel, e.what()});
      return;
    }
    files_.push_back(rel);
    std::vector<std::string> method_ids;
    for (SourceComponent& m : seg.methods) {
      method_ids.push_back(m.id);
      components_.push_back(std::move(m));
    }
    for (size_t s = 0; s < seg.statements.size(); ++s) {
      int enclosing = seg.enclosing[s];
      containment_[seg.statements[s].id] =
          enclosing >= 0 ? method_ids[static_cast<size_t>(enclosing)]
                         : std::string(kTopLevelContext);
      components_.push_back(std::move(seg.statements[s]));
    }
  }

  void finish_build() {
    rebuild_lookups();
    if (components_.empty()) throw DataError("empty corpus");
  }

  void rebuild_lookups() {
    by_id_.clear();
    statement_pool_.clear();
    context_pool_.clear();
    statements_of_.clear();
    pool_by_signature_.clear();
    for (size_t i = 0; i < components_.size(); ++i) {
      const SourceComponent& c = components_[i];
      by_id_[c.id] = i;
      if (c.role == Role::Method) {
        context_pool_.push_back(i);
      } else {
        statement_pool_.push_back(i);
        pool_by_signature_.emplace(c.signature, i);
        auto it = containment_.find(c.id);
        if (it != containment_.end() && it->second != kTopLevelContext) {
          statements_of_[it->second].push_back(i);
        }
      }
    }
    // pools in corpus order: file path, then source position
    auto position_less = [this](size_t a, size_t b) {
      const SourceComponent& x = components_[a];
      const SourceComponent& y = components_[b];
      if (x.file != y.file) return x.file < y.file;
      if (x.start_line != y.start_line) return x.start_line < y.start_line;
      int xc = x.tokens.empty() ? 0 : x.tokens.front().column;
      int yc = y.tokens.empty() ? 0 : y.tokens.front().column;
      return xc < yc;
    };
    std::sort(statement_pool_.begin(), statement_pool_.end(), position_less);
    std::sort(context_pool_.begin(), context_pool_.end(), position_less);
    for (auto& [id, stmts] : statements_of_) {
      std::sort(stmts.begin(), stmts.end(), position_less);
    }
  }
};

}  // namespace ingrank
