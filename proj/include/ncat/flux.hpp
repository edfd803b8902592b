#pragma once

// Flux data on the unit sphere: stereographic coordinates, balancing,
// TYPE classification and the known non-existence patterns.

#include <optional>
#include <string>
#include <vector>

#include "ncat/types.hpp"

namespace ncat {

/// Projection from the north pole: v = (2Re p, 2Im p, |p|^2-1)/(|p|^2+1).
StereoPoint stereographic(const Vec3& v);
Vec3 inverse_stereographic(const StereoPoint& p);

/// Rotation taking the unit vector v to (0,0,1). For v = +e3 this is the
/// identity; for v = -e3 it is the half turn about the x1-axis.
Mat3 rotation_to_north(const Vec3& v);

struct FluxData {
  std::vector<Vec3> vectors;
  std::vector<double> weights;

  int n() const { return static_cast<int>(vectors.size()); }
  /// Throws InvalidInput unless n >= 2, sizes agree, vectors are unit
  /// (within 1e-12) and weights are nonzero and finite.
  void validate() const;
};

/// |sum a_j v_j|
double check_balance(const FluxData& d);
/// check_balance(d) <= rel * sum |a_j|
bool is_balanced(const FluxData& d, double rel = 1e-10);

enum class Kind { TypeI = 1, TypeII = 2, TypeIII = 3 };
const char* to_string(Kind k);

struct TypeClass {
  Kind kind = Kind::TypeIII;
  int span_dim = 3;
  Vec3 singular_values = Vec3::Zero();
  /// n = 4 only: the nondegeneracy product of 3x3 minors, computed after
  /// sending `d_infinity_index` to the north pole. Nonzero iff TYPE III.
  std::optional<double> D;
  int d_infinity_index = -1;
};

TypeClass classify_type(const FluxData& d);

/// D for finite stereographic points p1, p2, p3 (the fourth at infinity).
double d_diagnostic(cplx p1, cplx p2, cplx p3);

enum class Obstruction {
  AllEqual = 1,              // v_1 = ... = v_n
  PairEqualRestOpposite = 2, // -v_i = -v_j = v_k for all other k
  OddOneOut = 3,             // -v_i = v_k for all k != i, weight sum nonzero
  AntipodalAndParallel = 4,  // n = 4: -v_i = v_j, v_k = v_l != +-v_i
};

const char* obstruction_name(Obstruction o);

struct ObstructionHit {
  Obstruction condition;
  std::vector<int> indices;
};

struct ObstructionReport {
  std::vector<ObstructionHit> hits;
  bool any() const { return !hits.empty(); }
  bool has(Obstruction o) const;
};

ObstructionReport detect_obstructions(const FluxData& d);

/// Index i with v_i = -v_k for every k != i (n >= 3), or with n = 2 and
/// v_1 = -v_2 returns 0. Empty if no such index exists.
std::optional<int> odd_one_out(const FluxData& d);

}  // namespace ncat
