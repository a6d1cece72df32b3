#pragma once

#include <stdexcept>
#include <string>

namespace hibound {

/// Error classes surfaced by the library. The CLI maps each to its own exit code.
enum class ErrorCode {
  invalid_argument,
  degenerate_bound,
  dimension_mismatch,
  invalid_data,
  corrupt_archive,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace hibound
