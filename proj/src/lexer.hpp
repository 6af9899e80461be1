#ifndef MTSYN_SRC_LEXER_HPP
#define MTSYN_SRC_LEXER_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mtsyn/error.hpp"

namespace mtsyn::detail {

enum class Tok { ident, number, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourceLoc loc;
};

/// Tokenizes a single logical line (or expression) of spec text.
class Lexer {
 public:
  Lexer(std::string_view text, SourceLoc origin) { tokenize(text, origin); }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::end; }

  bool is(std::string_view punct) const {
    return peek().kind == Tok::punct && peek().text == punct;
  }
  bool is_ident(std::string_view word) const {
    return peek().kind == Tok::ident && peek().text == word;
  }
  bool accept(std::string_view punct) {
    if (!is(punct)) return false;
    next();
    return true;
  }
  void expect(std::string_view punct) {
    if (!accept(punct))
      throw ParseError("expected '" + std::string(punct) + "' but found " +
                           describe(peek()),
                       peek().loc);
  }
  std::string expect_ident() {
    if (peek().kind != Tok::ident)
      throw ParseError("expected identifier but found " + describe(peek()),
                       peek().loc);
    return next().text;
  }
  void expect_end() {
    if (!at_end())
      throw ParseError("unexpected " + describe(peek()), peek().loc);
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::end) return "end of input";
    return "'" + t.text + "'";
  }

 private:
  void tokenize(std::string_view s, SourceLoc loc) {
    static constexpr std::string_view multi[] = {
        "<->", "->", ":=", "&&", "||", "==", "!=", "<=", ">="};
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
      for (std::size_t k = 0; k < n; ++k) {
        if (s[i + k] == '\n') {
          ++loc.line;
          loc.column = 1;
        } else {
          ++loc.column;
        }
      }
      i += n;
    };
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      if (c == '#') break;
      Token t;
      t.loc = loc;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
          ++j;
        t.kind = Tok::ident;
        t.text = std::string(s.substr(i, j - i));
        advance(j - i);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
          ++j;
        t.kind = Tok::number;
        t.text = std::string(s.substr(i, j - i));
        advance(j - i);
      } else {
        t.kind = Tok::punct;
        std::size_t len = 1;
        for (auto m : multi) {
          if (s.substr(i, m.size()) == m) {
            len = m.size();
            break;
          }
        }
        t.text = std::string(s.substr(i, len));
        advance(len);
      }
      toks_.push_back(std::move(t));
    }
    toks_.push_back(Token{Tok::end, "", loc});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace mtsyn::detail

#endif  // MTSYN_SRC_LEXER_HPP
