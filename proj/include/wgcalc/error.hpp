#pragma once

#include <stdexcept>
#include <string>

namespace wgcalc {

// Each kind maps to a distinct process exit code in the CLI.
enum class ErrorKind {
  InvalidArgument,
  GroundSetMismatch,
  DimensionTooSmall,
  EnumerationTooLarge,
  OracleTooLarge,
  Pole,
  RecursionPole,
  Config,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace wgcalc
