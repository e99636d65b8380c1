#pragma once

// Line-oriented reader shared by the file-format parsers.

#include <cstddef>
#include <string>
#include <string_view>

#include "oss/error.hpp"

namespace oss::detail {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  /// Next LF-terminated line without its terminator.
  std::string_view next(std::string_view what) {
    const std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) {
      throw Error(Errc::malformed_file, "missing " + std::string(what) + " line");
    }
    const std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return line;
  }

  /// Value of a `<name> <value>` line.
  std::string_view field(std::string_view name) {
    const std::string_view line = next(name);
    if (line.size() <= name.size() + 1 || !line.starts_with(name) || line[name.size()] != ' ') {
      throw Error(Errc::malformed_file, "expected '" + std::string(name) + " <value>' line, got '" + std::string(line) + "'");
    }
    return line.substr(name.size() + 1);
  }

  /// Exactly `count` raw bytes; throws length_mismatch when fewer remain.
  std::string_view take(std::size_t count) {
    if (text_.size() - pos_ < count) {
      throw Error(Errc::length_mismatch, "body shorter than declared length");
    }
    const std::string_view out = text_.substr(pos_, count);
    pos_ += count;
    return out;
  }

  std::string_view rest() const { return text_.substr(pos_); }
  bool at_end() const { return pos_ == text_.size(); }

  void expect_end() const {
    if (!at_end()) {
      throw Error(Errc::malformed_file, "trailing data");
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace oss::detail
