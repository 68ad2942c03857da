#pragma once

#include <stdexcept>
#include <string>

namespace tdg {

enum class ErrorKind {
    invalid_argument,  // malformed input, bad parameters, broken preconditions
    shape,             // m-vs-n shape mismatch for a solver
    budget,            // refused: exceeds combinatorial/oracle budget
    invalid_witness,   // absorbing-path precondition violations
    internal,          // invariant violation inside the library
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace tdg
