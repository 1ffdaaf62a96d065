#pragma once

#include <stdexcept>
#include <string>

namespace nsg {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A candidate member set is not closed under addition (or a sum hits the
/// Frobenius number). Carries one violating pair as a witness.
class NotClosedError : public Error {
 public:
  NotClosedError(int a, int b, int f)
      : Error("not closed under addition: " + std::to_string(a) + " + " +
              std::to_string(b) + " = " + std::to_string(a + b) +
              " must belong to a semigroup with Frobenius number " +
              std::to_string(f)),
        a_(a),
        b_(b) {}
  int lhs() const { return a_; }
  int rhs() const { return b_; }

 private:
  int a_, b_;
};

/// The designated Frobenius number was listed as a member.
class FrobeniusViolatedError : public Error {
 public:
  explicit FrobeniusViolatedError(int f)
      : Error("Frobenius number " + std::to_string(f) +
              " cannot be a member") {}
};

/// (Y, Z) does not satisfy Y nonempty, Z subset of [0, Max(Y)], Y and Z
/// disjoint.
class InvalidPairError : public Error {
 public:
  explicit InvalidPairError(const std::string& what) : Error(what) {}
};

/// The closed-form class count is only valid for f > 6*Max(Y) + 6; callers
/// must fall back to filtered enumeration below that threshold.
class FTooSmallError : public Error {
 public:
  FTooSmallError(int f, int max_y)
      : Error("f = " + std::to_string(f) +
              " is not above the class-formula threshold 6*Max(Y)+6 = " +
              std::to_string(6 * max_y + 6)) {}
};

/// Type (k; A) extraction requires a depth-3 semigroup.
class NotDepth3Error : public Error {
 public:
  explicit NotDepth3Error(const std::string& what) : Error(what) {}
};

/// A configured node-count or wall-clock budget was exhausted mid-run.
class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

/// The request is outside the supported desk-scale range (e.g. a 2^(f-1)
/// subset scan for f > 22).
class OutOfBudgetError : public Error {
 public:
  explicit OutOfBudgetError(const std::string& what) : Error(what) {}
};

}  // namespace nsg
