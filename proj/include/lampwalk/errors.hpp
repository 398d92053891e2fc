#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lampwalk {

using Index = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition on an argument.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A product entry underflowed to zero although the exact value is positive.
class DegenerateEntry : public Error {
 public:
  DegenerateEntry(Index k, const std::string& what)
      : Error(what), index_(k) {}
  Index index() const { return index_; }

 private:
  Index index_;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Iterated logarithm evaluated outside its domain.
class NotDefined : public Error {
 public:
  using Error::Error;
};

class InvalidProbability : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class NonPositiveValue : public Error {
 public:
  using Error::Error;
};

}  // namespace lampwalk
