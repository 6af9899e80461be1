#ifndef MTSYN_SRC_EXPR_PARSER_HPP
#define MTSYN_SRC_EXPR_PARSER_HPP

#include "lexer.hpp"
#include "mtsyn/expr.hpp"

namespace mtsyn::detail {

Expr parse_expr(Lexer& lex, const ExprScope& scope);
/// Parses `x := e; y := e` up to (not including) a closing '}' or the end.
Action parse_action(Lexer& lex, const ExprScope& scope);

}  // namespace mtsyn::detail

#endif  // MTSYN_SRC_EXPR_PARSER_HPP
