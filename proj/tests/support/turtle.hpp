// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace wfsem::testing {

struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;
  bool literal = false;

  auto operator<=>(const Triple&) const = default;
};

// Small Turtle reader for test oracles: @prefix/PREFIX, IRIs with \u
// escapes, prefixed names, `a`, plain string literals, and the `;` `,` `.`
// punctuation. Blank nodes and collections are rejected. Throws
// std::runtime_error with the offending offset.
std::vector<Triple> parse_turtle(std::string_view text);

// One `<s> <p> <o> .` statement per line.
std::vector<Triple> parse_ntriples(std::string_view text);

}  // namespace wfsem::testing
