#include "cremona/error.hpp"

namespace cremona {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Malformed: return "malformed";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::RankMismatch: return "rank-mismatch";
    case ErrorKind::InvalidClass: return "invalid-class";
    case ErrorKind::NonSpanning: return "non-spanning";
    case ErrorKind::NonIntegral: return "non-integral";
    case ErrorKind::Inconsistent: return "inconsistent";
    case ErrorKind::FormViolation: return "form-violation";
    case ErrorKind::CanonicalViolation: return "canonical-violation";
    case ErrorKind::InfiniteOrder: return "infinite-order";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace cremona
