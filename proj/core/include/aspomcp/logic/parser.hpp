#pragma once

#include <filesystem>
#include <string_view>

#include "aspomcp/logic/program.hpp"

namespace aspomcp::logic {

// Parses the rule-file dialect:
//
//   head :- body.            causal rule
//   head.                    fact (ranges allowed: rock(1..4).)
//   :~ body. [w@l, T1, ...]  weak constraint
//
// Body literals are separated by `,` or `;` and are atoms, `not atom`, or
// integer comparisons `V op c`, `c op V`, `c1 <= V <= c2` with op one of
// >= <= > < = (the unicode forms ≥ and ≤ are accepted too). `%` starts a
// comment. Throws ProgramError with line/column on failure.
Program parse_program(std::string_view text);

Program load_program(const std::filesystem::path& path);

}  // namespace aspomcp::logic
