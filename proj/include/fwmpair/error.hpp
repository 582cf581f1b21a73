#pragma once

#include <stdexcept>
#include <string>

namespace fwmpair {

enum class ErrorKind {
  dimension,
  coverage,
  resolution,
  range,
  domain,
  degenerate_walkoff,
  degenerate_state,
  degenerate_transmission,
  configuration,
  io,
};

/// Every failure raised by the library carries a kind so the CLI can map it
/// onto an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

/// 2 = configuration, 4 = I/O, 3 = everything numerical.
int exit_code(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace fwmpair
