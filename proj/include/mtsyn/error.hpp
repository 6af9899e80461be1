#ifndef MTSYN_ERROR_HPP
#define MTSYN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtsyn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised while evaluating guards and actions.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

struct SourceLoc {
  std::size_t line = 0;
  std::size_t column = 0;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourceLoc loc)
      : Error(std::to_string(loc.line) + ":" + std::to_string(loc.column) +
              ": " + what),
        loc_(loc) {}

  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

}  // namespace mtsyn

#endif  // MTSYN_ERROR_HPP
