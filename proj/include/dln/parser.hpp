#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dln/kb.hpp"

namespace dln {

/// Parse failure with 1-based line/column of the offending token.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + what),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_, col_;
};

/// Parse a whole knowledge base from text.
///
/// One axiom per line: `C <= D` (strong), `C <~ D` (defeasible; the premise
/// must be free of normality concepts), or `disjoint(A, B)` which desugars to
/// `A and B <= Bot`.  `#` starts a comment; blank lines are skipped.
/// Defeasible inclusions get ids 0..|D|-1 in file order.
KnowledgeBase parse_kb(std::string_view text);

/// Parse a single query of the form `C <= D`.
Query parse_query(std::string_view text);

/// Parse a single concept expression.
ConceptPtr parse_concept(std::string_view text);

}  // namespace dln
