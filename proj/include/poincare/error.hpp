#pragma once

#include <stdexcept>
#include <string>

namespace poincare {

enum class ErrorKind {
  InvalidArgument,  // violated precondition on caller-supplied values
  Io,               // file could not be opened, read or written
  Parse,            // file contents malformed
  Numeric,          // numeric contract violated (non-unit code point, rho > 1, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace poincare
