#include "fwmpair/error.hpp"

namespace fwmpair {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::coverage: return "coverage";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::range: return "range";
    case ErrorKind::domain: return "domain";
    case ErrorKind::degenerate_walkoff: return "degenerate walk-off";
    case ErrorKind::degenerate_state: return "degenerate state";
    case ErrorKind::degenerate_transmission: return "degenerate transmission";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::io: return "i/o";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::configuration: return 2;
    case ErrorKind::io: return 4;
    default: return 3;
  }
}

}  // namespace fwmpair
