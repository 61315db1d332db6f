#pragma once

#include <string>

#include "mwb/cohomology.hpp"
#include "mwb/groupexpr.hpp"
#include "mwb/witness.hpp"

namespace mwb {

struct ParseError : Error {
    ParseError(const std::string& message, int line, int col)
        : Error(message + " (line " + std::to_string(line) + ", column " + std::to_string(col) +
                ")"),
          line(line), col(col) {}
    int line;
    int col;
};

/// Grammar (whitespace-insensitive):
///   expr  := "c2" | "triv"
///          | "free(" d ";" theta ("," theta)* ")"
///          | "demushkin(case=" 1..4 ", d=" int ", f=" (int >= 2 | "inf") ")"
///          | "prod(" expr "," expr ")"
///          | "semi(" expr ")"
///   theta := "1" | "-1" | "1+2^" f | "-1+2^" f | "res:" odd-int "/" K
/// Validation violations are reported as parse errors at the expression.
GroupExprPtr parse_group(const std::string& text);

/// "[c1; c2; ...]": each class a "+"-joined list of generator names
/// suffixed by "*", or "0". Length >= 2.
MasseySequence parse_sequence(const std::string& text, const BasisRegistry& registry);

std::string group_text(const GroupExpr& expr);
std::string sequence_text(const MasseySequence& seq, const BasisRegistry& registry);

} // namespace mwb
