#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ncat {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class ErrorCode {
  InvalidInput,
  NonConvergence,
  ZeroPolynomial,
  CoincidentPunctures,
  InfinityEnd,
  DegenerateData,
  DegenerateConfiguration,
  RejectedRoot,
  NoSolution,
  ObstructedInput,
  NewtonFailure,
  UnknownName,
  ParamOutOfRange,
  AtPuncture,
  PathBlocked,
  SinkFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A point of the Riemann sphere: a finite complex number or the single
/// point at infinity.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex() = default;
  constexpr ExtendedComplex(cplx z) : value_(z) {}  // NOLINT: implicit by design of the algebra
  constexpr ExtendedComplex(double x) : value_(x, 0.0) {}

  static constexpr ExtendedComplex infinity() {
    ExtendedComplex e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws for the point at infinity.
  cplx value() const {
    if (infinite_) throw Error(ErrorCode::InfinityEnd, "value() of the point at infinity");
    return value_;
  }

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  cplx value_{0.0, 0.0};
  bool infinite_ = false;
};

/// Image of a unit vector under stereographic projection from the north pole.
using StereoPoint = ExtendedComplex;
/// Puncture (end) of the domain sphere.
using Puncture = ExtendedComplex;

/// Chordal distance on the Riemann sphere (unit sphere normalization, so
/// the distance between 0 and infinity is 2).
double chordal_distance(const ExtendedComplex& a, const ExtendedComplex& b);

}  // namespace ncat
