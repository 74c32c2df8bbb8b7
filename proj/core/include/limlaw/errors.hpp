#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace limlaw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: bad literals, syntax errors, foreign symbols,
// free variables where a sentence is required.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError("parse error at offset " + std::to_string(position) + ": " +
                   message),
        position_(position) {}

  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// An equivalence decision ran out of its node budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// An internal cross-check failed (oracle disagreement, periodic chain).
// Always a bug; the message names the witnesses.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace limlaw
