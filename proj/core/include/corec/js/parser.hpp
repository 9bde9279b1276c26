#pragma once

#include <string_view>

#include "corec/js/ast.hpp"
#include "corec/js/lexer.hpp"

namespace corec::js {

/// Parses an ES5/ES6 source file into an ESTree-shaped syntax tree.
/// Throws ParseError (or LexError) carrying line/column on malformed input.
NodePtr parse(std::string_view source);

}  // namespace corec::js
