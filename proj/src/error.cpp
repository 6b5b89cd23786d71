#include "acas/error.hpp"

namespace acas {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Range: return "range";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::BadMagic: return "bad-magic";
    case ErrorKind::BadVersion: return "bad-version";
    case ErrorKind::BadChecksum: return "bad-checksum";
    case ErrorKind::Truncated: return "truncated";
    case ErrorKind::Io: return "io";
    case ErrorKind::KeyNotDisclosed: return "key-not-disclosed";
    case ErrorKind::KeyVerification: return "key-verification";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

}  // namespace acas
