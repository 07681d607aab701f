#pragma once

#include <stdexcept>
#include <string>

namespace thetacell {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or violated preconditions.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A presheaf or map failed a structural check (functoriality, EZ, closure).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// The requested value depends on cells above the available truncation.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace thetacell
