#pragma once

// Reader and writer for the line-oriented `.lmc` text format:
//
//   # comment
//   states: q1 q2 r1 r2
//   alphabet: a b c
//   init1: q1=1
//   init2: q2=1
//   trans: q1 a q1 1/2
//
// Probabilities are `p/q` or integers. Unlisted transitions are zero.

#include "tvd/lmc.hpp"

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tvd {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses and validates an instance. Syntax problems raise ParseError with a
/// 1-based line and column; a chain that parses but is not stochastic raises
/// InvalidInstance.
ProblemInstance parse_lmc(std::string_view text);

ProblemInstance read_lmc_file(const std::string& path);

/// Canonical rendering: declaration order for states and letters, transitions
/// sorted by (source, letter, target). parse_lmc(serialize_lmc(x)) == x.
std::string serialize_lmc(const ProblemInstance& instance);

void write_lmc_file(const std::string& path, const ProblemInstance& instance);

}  // namespace tvd
