#pragma once

#include <stdexcept>
#include <string>

namespace gvs {

/// Violated precondition or malformed input. Maps to CLI exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A check was asked to certify a result whose hypotheses do not hold.
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quadrature or root-finding did not converge. Maps to CLI exit code 3.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

}  // namespace gvs
