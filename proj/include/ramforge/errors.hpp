#pragma once

#include <stdexcept>
#include <string>

namespace ramforge {

// Base of everything the library throws on bad input or insufficient data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* reason() const noexcept { return "error"; }
};

// The input violates a documented precondition (wrong field, not a unit,
// malformed break data, ...). Retrying with more precision will not help.
class InputError : public Error {
 public:
  using Error::Error;
  const char* reason() const noexcept override { return "invalid_input"; }
};

class FieldMismatch : public InputError {
 public:
  FieldMismatch() : InputError("operands live over different finite fields") {}
  const char* reason() const noexcept override { return "field_mismatch"; }
};

// The truncation (X-adic) or coefficient (p-adic) precision is too small to
// certify the requested quantity. Callers may retry with larger N / M / P.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, std::string quantity = {}, int level = -1)
      : Error(what), quantity_(std::move(quantity)), level_(level) {}
  const char* reason() const noexcept override { return "insufficient_precision"; }
  const std::string& quantity() const noexcept { return quantity_; }
  int level() const noexcept { return level_; }

 private:
  std::string quantity_;
  int level_;
};

}  // namespace ramforge
