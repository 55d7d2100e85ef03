#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "k3/sympoly.hpp"
#include "k3/unipoly.hpp"

namespace k3 {

/// Syntax errors carry the 0-based offset into the source text.
struct ParseError : std::invalid_argument {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
};

/// Grammar:
///   expr  := ['+'|'-'] term (('+'|'-') term)*
///   term  := power ('*' power)*
///   power := ('+'|'-') power | atom ['^' digits]
///   atom  := digits ['/' digits] | name | '(' expr ')'
/// Floating-point literals are rejected. The only admissible name is var.
UniPoly parse_poly(std::string_view text, const std::string& var = "t");

/// The same grammar over several variables.
SymPoly parse_sympoly(std::string_view text, const std::vector<std::string>& vars);

}  // namespace k3
