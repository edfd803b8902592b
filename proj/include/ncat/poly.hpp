#pragma once

// Dense univariate polynomials with complex coefficients.

#include <span>
#include <vector>

#include "ncat/types.hpp"

namespace ncat {

/// Polynomial with coefficients in ascending degree order. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is
/// nonzero (exact zeros are trimmed on construction).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs);
  Poly(std::initializer_list<cplx> coeffs) : Poly(std::vector<cplx>(coeffs)) {}

  static Poly constant(cplx c) { return Poly({c}); }
  /// z - root
  static Poly linear(cplx root) { return Poly({-root, 1.0}); }
  /// lc * prod (z - roots[i])
  static Poly from_roots(std::span<const cplx> roots, cplx lc = 1.0);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : cplx{};
  }
  cplx leading() const { return is_zero() ? cplx{} : coeffs_.back(); }
  double max_norm() const;

  /// Horner evaluation.
  cplx operator()(cplx z) const;

  Poly derivative() const;
  Poly monic() const;
  /// Drops leading coefficients whose modulus is below rel * max_norm().
  Poly trimmed(double rel) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(cplx s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, cplx s) { return a *= s; }
  friend Poly operator*(cplx s, Poly a) { return a *= s; }
  Poly operator-() const { return *this * cplx(-1.0); }

 private:
  void trim_exact();
  std::vector<cplx> coeffs_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};
DivMod divmod(const Poly& num, const Poly& den);

struct RootOptions {
  int max_iterations = 500;
  /// Per-root stopping threshold: |correction| < step_tol * (1 + |root|).
  double step_tol = 1e-13;
  /// Backward-error acceptance: |p(r)| <= tol_root * max|c| * max(1,|r|)^deg.
  double tol_root = 1e-9;
  /// Roots closer than cluster_tol * max(1, max|root|) are merged.
  double cluster_tol = 1e-7;
};

/// All roots with multiplicity (Aberth-Ehrlich). Clustered roots are
/// reported at their centroid. Throws NonConvergence.
std::vector<cplx> roots(const Poly& p, const RootOptions& opt = {});

struct RootCluster {
  cplx value;
  int multiplicity;
};
/// Roots grouped into clusters, ordered by (real, imag).
std::vector<RootCluster> distinct_roots(const Poly& p, const RootOptions& opt = {});

/// Determinant of the Sylvester matrix. Throws ZeroPolynomial.
cplx resultant(const Poly& p, const Poly& q);

struct ResultantTest {
  cplx value;
  /// Product of the Sylvester row max-norms.
  double scale;
  bool vanishes;
};
ResultantTest resultant_test(const Poly& p, const Poly& q, double rel_tol = 1e-9);

/// Monic approximate gcd. A remainder is zero once its max-norm falls
/// below rel_tol times the (normalized) input norm.
Poly gcd(const Poly& p, const Poly& q, double rel_tol = 1e-10);

/// Unique polynomial of degree < n through n points (Vandermonde solve).
Poly interpolate(std::span<const cplx> x, std::span<const cplx> y);

/// n Chebyshev points of the first kind on [-radius, radius].
std::vector<cplx> chebyshev_nodes(int n, double radius);

}  // namespace ncat
