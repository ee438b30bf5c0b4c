#pragma once

#include <stdexcept>
#include <string>

namespace ingrank {

// Exit-code contract: usage/config problems exit 1, data problems exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LexError : public DataError {
 public:
  LexError(const std::string& message, int line)
      : DataError(message + " at line " + std::to_string(line)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class SegmentError : public DataError {
 public:
  SegmentError(const std::string& file, const std::string& message, int line)
      : DataError(file + ": " + message + " at line " + std::to_string(line)),
        file_(file),
        line_(line) {}
  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

class DiffParseError : public DataError {
 public:
  DiffParseError(const std::string& message, int line)
      : DataError("diff parse error: " + message + " at line " + std::to_string(line)),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace ingrank
