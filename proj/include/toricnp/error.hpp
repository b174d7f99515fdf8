#pragma once

#include <stdexcept>
#include <string>

namespace toricnp {

/// Failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
  Domain,         // bad argument to a library call
  Parse,          // DSL syntax / declaration errors
  Inhomogeneous,  // dimensional homogeneity violated
  Unsupported,    // construct outside what the engine handles
  Invariant,      // internal consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace toricnp
