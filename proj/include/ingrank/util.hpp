#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ingrank/errors.hpp"

namespace ingrank {

inline constexpr uint64_t kFnvOffset = 1469598103934665603ull;
inline constexpr uint64_t kFnvPrime = 1099511628211ull;

inline uint64_t fnv1a64(std::string_view data, uint64_t seed = kFnvOffset) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

inline uint64_t fnv1a64_mix(uint64_t value, uint64_t seed) {
  uint64_t h = seed;
  for (int i = 0; i < 8; ++i) {
    h ^= value & 0xffu;
    h *= kFnvPrime;
    value >>= 8;
  }
  return h;
}

inline std::string to_hex(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

// Deterministic RNG. mt19937_64 has a pinned sequence; the mappings below are
// pinned too, so results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). n must be > 0.
  uint64_t next_below(uint64_t n) {
    uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file: " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << content;
  if (!out) throw DataError("write failed: " + path.string());
}

// Write via a temp file and rename so readers never observe partial content.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  write_file(tmp, content);
  std::filesystem::rename(tmp, path);
}

namespace detail {

inline bool glob_match_at(std::string_view pat, size_t p, std::string_view path, size_t s) {
  while (p < pat.size()) {
    if (pat[p] == '*') {
      if (p + 1 < pat.size() && pat[p + 1] == '*') {
        size_t q = p + 2;
        if (q < pat.size() && pat[q] == '/') {
          // "**/" matches zero or more whole segments
          if (glob_match_at(pat, q + 1, path, s)) return true;
        }
        for (size_t k = s; k <= path.size(); ++k) {
          if (glob_match_at(pat, q, path, k)) return true;
          if (k < path.size() && q < pat.size() && pat[q] == '/' && path[k] == '/' &&
              glob_match_at(pat, q + 1, path, k + 1))
            return true;
        }
        return false;
      }
      for (size_t k = s; k <= path.size(); ++k) {
        if (glob_match_at(pat, p + 1, path, k)) return true;
        if (k < path.size() && path[k] == '/') break;  // '*' stays in one segment
      }
      return false;
    }
    if (s >= path.size()) return false;
    if (pat[p] == '?') {
      if (path[s] == '/') return false;
    } else if (pat[p] != path[s]) {
      return false;
    }
    ++p;
    ++s;
  }
  return s == path.size();
}

}  // namespace detail

// Glob over '/'-separated relative paths. `*` and `?` stay within one path
// segment, `**` crosses segments.
inline bool glob_match(std::string_view pattern, std::string_view path) {
  return detail::glob_match_at(pattern, 0, path, 0);
}

inline std::string format_double(double value, const char* fmt = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, value);
  return buf;
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string_view line = text.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.emplace_back(line);
      start = i + 1;
    }
  }
  if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n')
    lines.pop_back();
  return lines;
}

inline std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace ingrank
