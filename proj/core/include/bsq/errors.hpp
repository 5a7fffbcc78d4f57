#pragma once

#include <stdexcept>
#include <string>

namespace bsq {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed symbol text, invalid configuration, violated
// preconditions on sizes or parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : ConfigError(msg + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

// Failures of a numerical stage. `stage()` is empty unless the error was
// re-raised by the experiment pipeline.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg, std::string stage = {})
      : Error(stage.empty() ? msg : stage + ": " + msg), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

#define BSQ_NUMERIC_ERROR(Name)                                 \
  class Name : public NumericError {                            \
   public:                                                      \
    explicit Name(const std::string& msg) : NumericError(msg) {} \
  }

BSQ_NUMERIC_ERROR(DomainError);          // non-finite input
BSQ_NUMERIC_ERROR(BranchError);          // argument on a branch cut
BSQ_NUMERIC_ERROR(DegenerateTruncation); // truncation window too small
BSQ_NUMERIC_ERROR(NumericRangeError);    // overflow in scaling factors
BSQ_NUMERIC_ERROR(NearCriticalLevel);    // |dp/dI| vanishes on the level set
BSQ_NUMERIC_ERROR(InversionError);       // Newton failure inverting the action
BSQ_NUMERIC_ERROR(DegeneracyError);      // |dI/dE| vanishes

#undef BSQ_NUMERIC_ERROR

}  // namespace bsq
