#include <cmath>

#include "ncat/flux.hpp"

namespace ncat {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::CoincidentPunctures: return "CoincidentPunctures";
    case ErrorCode::InfinityEnd: return "InfinityEnd";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::RejectedRoot: return "RejectedRoot";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::ObstructedInput: return "ObstructedInput";
    case ErrorCode::NewtonFailure: return "NewtonFailure";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::AtPuncture: return "AtPuncture";
    case ErrorCode::PathBlocked: return "PathBlocked";
    case ErrorCode::SinkFailure: return "SinkFailure";
  }
  return "Unknown";
}

double chordal_distance(const ExtendedComplex& a, const ExtendedComplex& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  const cplx x = a.value(), y = b.value();
  return 2.0 * std::abs(x - y) / (std::sqrt(1.0 + std::norm(x)) * std::sqrt(1.0 + std::norm(y)));
}

StereoPoint stereographic(const Vec3& v) {
  const double x = v.x(), y = v.y(), z = v.z();
  const double rho2 = x * x + y * y;
  if (z > 0.0) {
    if (rho2 < 1e-24) return StereoPoint::infinity();
    // (x+iy)/(1-z) rewritten without the cancellation in 1-z.
    return StereoPoint(cplx(x, y) * (1.0 + z) / rho2);
  }
  return StereoPoint(cplx(x, y) / (1.0 - z));
}

Vec3 inverse_stereographic(const StereoPoint& p) {
  if (p.is_infinite()) return Vec3(0.0, 0.0, 1.0);
  const cplx z = p.value();
  const double m = std::norm(z);
  if (m > 1e16) {
    // Divide through by |p|^2 to stay accurate near the north pole.
    const cplx w = 1.0 / z;
    const double mw = std::norm(w);
    return Vec3(2.0 * w.real(), -2.0 * w.imag(), 1.0 - mw) / (1.0 + mw);
  }
  return Vec3(2.0 * z.real(), 2.0 * z.imag(), m - 1.0) / (m + 1.0);
}

Mat3 rotation_to_north(const Vec3& v) {
  const Vec3 north(0.0, 0.0, 1.0);
  const Vec3 u = v.normalized();
  const Vec3 axis = u.cross(north);
  const double s = axis.norm();
  const double c = u.dot(north);
  if (s < 1e-15) {
    if (c > 0.0) return Mat3::Identity();
    return Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal();
  }
  return Eigen::AngleAxisd(std::atan2(s, c), axis / s).toRotationMatrix();
}

}  // namespace ncat
