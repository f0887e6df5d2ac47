#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cremona {

/// Failure categories surfaced by the library. The C API maps each one to a
/// distinct status code, so new values must be appended.
enum class ErrorKind {
  Domain,              // arithmetic outside the domain (inverse of zero, conductor cap)
  Parse,               // malformed text or JSON input
  Malformed,           // structurally invalid object (zero map, bad model)
  CapExceeded,         // closure did not terminate within the element cap
  RankMismatch,        // classes/matrices of different ambient rank
  InvalidClass,        // e.g. odd C.(C+K)
  NonSpanning,         // curve classes do not span Pic (x) Q
  NonIntegral,         // linear extension is not an integer matrix
  Inconsistent,        // permutation is not induced by any linear map
  FormViolation,       // matrix does not preserve the intersection form
  CanonicalViolation,  // matrix moves K
  InfiniteOrder,       // isometry has no finite order within the cap
  Unsupported,         // rank or degree outside the supported window
  Usage,               // caller error (unknown id, bad arguments)
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace cremona
