#pragma once

#include <stdexcept>
#include <string>

namespace fdb {

// Mirrors fdb_status in the public C header.
enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  dimension = 3,
  numeric = 4,
  io = 5,
  internal = 6,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace fdb
