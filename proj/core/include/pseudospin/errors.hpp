#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pseudospin {

//! Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

//! Evaluation point lies outside the real domain of a function
//! (e.g. a non-integer power of a negative base).
class DomainError : public Error {
 public:
  using Error::Error;
};

//! The NU template has alpha8 < 0 or alpha9 < 0: no real bound state at
//! this template.
class InvalidBranchError : public Error {
 public:
  using Error::Error;
};

class NoRootError : public Error {
 public:
  using Error::Error;
};

//! More than one certified root survived branch filtering for one (n, kappa).
class MultipleRootsError : public Error {
 public:
  MultipleRootsError(const std::string& what, std::vector<double> roots)
      : Error(what), roots_(std::move(roots)) {}
  const std::vector<double>& roots() const { return roots_; }

 private:
  std::vector<double> roots_;
};

//! Shooting found bound states, but none (or several) with the requested
//! node count.
class NodeCountMismatchError : public Error {
 public:
  using Error::Error;
};

//! Sigma_m = m - E + C vanishes, so the upper component cannot be
//! reconstructed.
class DegenerateSigmaError : public Error {
 public:
  using Error::Error;
};

class ZeroNormError : public Error {
 public:
  using Error::Error;
};

}  // namespace pseudospin
