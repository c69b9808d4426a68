#pragma once

#include <stdexcept>
#include <string>

namespace tristeer {

enum class ErrorKind {
  kInvalidArgument,  // parameter outside its domain (a, p, mu, tolerance)
  kDimension,        // matrix of the wrong shape
  kValidation,       // not a density matrix / POVM element / model
  kParse,            // malformed state file
  kThreshold,        // bisection preconditions violated
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tristeer
