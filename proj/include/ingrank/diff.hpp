#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ingrank/errors.hpp"
#include "ingrank/util.hpp"

namespace ingrank {

struct DiffLine {
  long number = 0;  // 1-based line number in the respective file version
  std::string text;
};

struct DiffHunk {
  std::string file_path;  // pre-change path, "a/" prefix stripped
  std::vector<DiffLine> removed;
  std::vector<DiffLine> added;
};

namespace detail {

inline std::string strip_diff_prefix(std::string_view path) {
  if (path.starts_with("a/") || path.starts_with("b/")) path.remove_prefix(2);
  if (path == "/dev/null") return "";
  // strip trailing tab + timestamp that some diff tools append
  size_t tab = path.find('\t');
  if (tab != std::string_view::npos) path = path.substr(0, tab);
  return std::string(path);
}

// "@@ -l[,n] +l[,n] @@"; returns false if the line is not a hunk header at all
inline bool parse_hunk_header(std::string_view line, long& old_start, long& new_start) {
  if (!line.starts_with("@@")) return false;
  size_t minus = line.find('-');
  size_t plus = line.find('+');
  size_t close = line.find("@@", 2);
  if (minus == std::string_view::npos || plus == std::string_view::npos ||
      close == std::string_view::npos || minus > plus || plus > close) {
    old_start = -1;  // malformed
    return true;
  }
  auto read_number = [&](size_t at, long& out) {
    long value = 0;
    size_t i = at;
    bool any = false;
    while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
      value = value * 10 + (line[i] - '0');
      ++i;
      any = true;
    }
    out = any ? value : -1;
  };
  read_number(minus + 1, old_start);
  read_number(plus + 1, new_start);
  return true;
}

}  // namespace detail

// Parses unified-diff text into hunks. Context lines are discarded; removed
// and added lines carry their pre-/post-change line numbers. Lines outside
// hunks (git headers and the like) are ignored.
inline std::vector<DiffHunk> parse_unified_diff(std::string_view diff_text) {
  std::vector<DiffHunk> hunks;
  std::string current_file;
  long old_line = 0, new_line = 0;
  bool in_hunk = false;

  std::vector<std::string> lines = split_lines(diff_text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    int line_number = static_cast<int>(i + 1);
    if (line.starts_with("--- ")) {
      current_file = detail::strip_diff_prefix(std::string_view(line).substr(4));
      in_hunk = false;
      continue;
    }
    if (line.starts_with("+++ ")) {
      if (current_file.empty())
        current_file = detail::strip_diff_prefix(std::string_view(line).substr(4));
      in_hunk = false;
      continue;
    }
    long old_start = 0, new_start = 0;
    if (detail::parse_hunk_header(line, old_start, new_start)) {
      if (old_start < 0 || new_start < 0)
        throw DiffParseError("malformed hunk header '" + line + "'", line_number);
      hunks.push_back(DiffHunk{current_file, {}, {}});
      old_line = old_start;
      new_line = new_start;
      in_hunk = true;
      continue;
    }
    if (!in_hunk) continue;
    if (line.starts_with("-")) {
      hunks.back().removed.push_back({old_line, line.substr(1)});
      ++old_line;
    } else if (line.starts_with("+")) {
      hunks.back().added.push_back({new_line, line.substr(1)});
      ++new_line;
    } else if (line.starts_with("\\")) {
      // "\ No newline at end of file"
    } else {
      ++old_line;  // context line
      ++new_line;
    }
  }
  return hunks;
}

}  // namespace ingrank
