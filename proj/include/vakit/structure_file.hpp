/**
 * @file structure_file.hpp
 * @brief Line-oriented text format for structures (".vas").
 *
 * Sections: [kind] [scalars] [group] [beta] [space] [window] [vacuum]|[covacuum]
 * [Y]|[coY], and for modules/comodules [mspace] [mwindow] [YM]|[coYM]
 * [DM]|[coDM] [omega]|[rho]. '#' starts a comment.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vakit/structure.hpp"

namespace vakit {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message,
             std::string expected = {});
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
  std::string message_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseResult {
  Structure structure;
  std::vector<std::string> warnings;
};

ParseResult parse_structure(std::string_view text, const std::string& source = "<input>");
ParseResult load_structure(const std::string& path);

/// One vector in the file syntax, e.g. "2*e - (z^2)*f" or "0".
SparseVector parse_vector(std::string_view text, const GradedSpace& space, int conductor = 1);

/// Canonical text; parse(serialize(s)) reproduces s.
std::string serialize(const Structure& s);
void save_structure(const Structure& s, const std::string& path);

/// Digest of the canonical text.
std::string structure_digest(const Structure& s);

}  // namespace vakit
