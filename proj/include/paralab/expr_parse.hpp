#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "paralab/field.hpp"

namespace paralab {

// Syntax or binding error; `offset` is the byte position in the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, size_t offset);
    size_t offset() const { return offset_; }

private:
    size_t offset_;
};

// Parses the manifest expression grammar over the given coordinate names:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | coordinate | function '(' expr ')' | '(' expr ')'
// '^' is right-associative and binds tighter than unary minus, so
// "-y^2" means -(y^2).  Functions: exp log sin cos tan sinh cosh tanh sqrt.
// Numbers are decimal with optional fraction and exponent.  The returned
// tree is built without simplification, so printing and reparsing gives a
// structurally identical tree.  Throws ParseError; never crashes.
ScalarField parse_expression(std::string_view src, std::span<const std::string> coords);

}  // namespace paralab
