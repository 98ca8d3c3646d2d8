#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace thetanull {

/// y^2 = f(x) with f monic of degree 2g+1. The root order fixes the
/// Weierstrass labels W_1..W_{2g+1}; W_{2g+2} is the point at infinity.
class HyperellipticCurve {
public:
  /// Roots in the order that defines W_1..W_{2g+1}. Throws on even count,
  /// fewer than three roots, or roots closer than 1e-6 of the root scale.
  static HyperellipticCurve fromRoots(std::vector<std::complex<double>> roots);

  /// Coefficients in descending powers. A list of odd length 2g+1 means the
  /// leading 1 is implied; a list of even length must start with 1. Roots
  /// come from the companion matrix, Newton-polished, sorted by (Re, Im).
  static HyperellipticCurve fromCoefficients(const std::vector<std::complex<double>>& descending);

  int genus() const { return genus_; }
  const std::vector<std::complex<double>>& roots() const { return roots_; }
  /// Ascending coefficients c_0..c_{2g+1}, c_{2g+1} = 1.
  const Eigen::VectorXcd& coefficients() const { return coeffs_; }
  double separation() const { return separation_; }
  /// max(1, max |root|)
  double rootScale() const { return scale_; }

  std::complex<double> f(std::complex<double> x) const;

  /// Same curve with roots listed in a new order: new root i = old root perm[i].
  HyperellipticCurve permuted(const std::vector<int>& perm) const;
  /// x -> lambda x applied to the roots (the curve y^2 = f(x / lambda) lambda^{2g+1}).
  HyperellipticCurve scaled(std::complex<double> lambda) const;

private:
  int genus_ = 0;
  std::vector<std::complex<double>> roots_;
  Eigen::VectorXcd coeffs_;
  double separation_ = 0;
  double scale_ = 1;
};

/// Point (x, y) on the curve; y must satisfy y^2 = f(x).
struct CurvePoint {
  std::complex<double> x;
  std::complex<double> y;
};

/// y = sheet * principal sqrt(f(x)), sheet = +1 or -1.
CurvePoint pointOnCurve(const HyperellipticCurve& curve, std::complex<double> x, int sheet);

/// Roots of a monic polynomial given in ascending coefficients.
std::vector<std::complex<double>> polynomialRoots(const Eigen::VectorXcd& ascending);

/// Standard discriminant H^{2d-2} prod_{i<j} (a_i - a_j)^2 from the roots of
/// a monic polynomial; equal to (-1)^{d(d-1)/2} prod_{i != j} (a_i - a_j).
std::complex<double> discriminant(const HyperellipticCurve& curve);
std::complex<double> discriminantFromRoots(const std::vector<std::complex<double>>& roots);

/// Exact standard discriminant of an integer polynomial (descending
/// coefficients) via the Sylvester resultant Res(f, f'), computed with
/// fraction-free elimination in 128-bit integers. Throws std::overflow_error
/// when an intermediate leaves the 128-bit range.
__int128 discriminantExact(const std::vector<long long>& descending);
std::string toString(__int128 v);

/// Even-degree model y^2 = F(x), deg F = 2g+2 with roots given: sends root
/// `at_infinity` to infinity through x = r + 1/t. The result has roots
/// 1/(r_i - r) in the original order with the chosen root removed.
HyperellipticCurve oddModelFromEven(const std::vector<std::complex<double>>& even_roots, int at_infinity);

}  // namespace thetanull
