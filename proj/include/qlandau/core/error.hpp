#pragma once

#include <stdexcept>
#include <string>

namespace qlandau {

/// Category attached to every exception thrown by the library. The CLI maps
/// these onto process exit codes.
enum class ErrorKind {
  invalid_argument,
  config,
  numerical_abort,
  not_converged,
  resolution,
};

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

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::invalid_argument, what);
}

}  // namespace qlandau
