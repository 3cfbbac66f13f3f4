#pragma once

#include <string>
#include <string_view>

#include "awn/term.hpp"

namespace awn {

/// Syntax error with a source position.
class ParseError : public ModelError {
 public:
  ParseError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses AWN model text into an unlabelled specification: variables are
/// resolved to schema slots, expressions are type checked, abbreviations
/// are expanded and every call target is checked.
Specification parse_spec(std::string_view source);

/// Parses a stand-alone expression against a schema. Primed variables are
/// accepted when `allow_post` is set.
Expr parse_expr(std::string_view source, const StateSchema& schema, bool allow_post = false);

/// Static type of a resolved expression; throws ModelError on mismatch.
Type type_check(const Expr& e, const StateSchema& schema, bool allow_post = false);

}  // namespace awn
