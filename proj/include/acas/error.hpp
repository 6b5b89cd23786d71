#pragma once

#include <stdexcept>
#include <string>

namespace acas {

enum class ErrorKind {
  Structural,       // precondition or invariant violated by the caller
  Range,            // index/time outside the covered interval
  Parse,            // malformed text input
  BadMagic,
  BadVersion,
  BadChecksum,
  Truncated,
  Io,
  KeyNotDisclosed,  // key requested before its disclosure time
  KeyVerification,  // disclosed key does not hash to the chain root
  Validation,       // scenario or header contents rejected
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace acas
