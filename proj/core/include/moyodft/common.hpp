#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace moyodft {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Base class of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inner solver exhausted its iteration budget above tolerance.
struct NonConvergence : Error { using Error::Error; };
/// A function oracle returned +infinity at every probe point.
struct EmptyDomain : Error { using Error::Error; };
/// Vector length does not match the model, or particle counts are invalid.
struct DimensionMismatch : Error { using Error::Error; };
/// Fock space dimension exceeds the configured cap.
struct BasisTooLarge : Error { using Error::Error; };
/// Dense symmetric eigensolver reported failure.
struct EigensolverFailure : Error { using Error::Error; };
/// Backtracking line search could not satisfy the descent condition.
struct StalledLineSearch : Error { using Error::Error; };
/// A step-length computation received a zero search direction.
struct ZeroDirection : Error { using Error::Error; };
/// An argument lies outside the mathematical domain of the operation.
struct DomainError : Error { using Error::Error; };

/// Value in R with explicit +/- infinity flags. Infinities are never encoded
/// as floating sentinels, so NaN cannot leak out of an out-of-domain query.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(v, 0); }
  static ExtendedReal plus_infinity() { return ExtendedReal(0.0, +1); }
  static ExtendedReal minus_infinity() { return ExtendedReal(0.0, -1); }

  bool is_finite() const { return tag_ == 0; }
  bool is_plus_infinity() const { return tag_ > 0; }
  bool is_minus_infinity() const { return tag_ < 0; }

  /// Finite value; throws DomainError if the flag is infinite.
  double value() const {
    if (tag_ != 0) throw DomainError("ExtendedReal: value() called on an infinity");
    return value_;
  }

 private:
  ExtendedReal(double v, int tag) : value_(v), tag_(tag) {}
  double value_;
  int tag_;
};

}  // namespace moyodft
