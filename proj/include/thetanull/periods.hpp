#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thetanull/charcomb.hpp"
#include "thetanull/curve.hpp"
#include "thetanull/quadrature.hpp"
#include "thetanull/siegel.hpp"

namespace thetanull {

struct PeriodOptions {
  quad::Settings quadrature{1e-13, 16, 1 << 17};
  /// Maximum lattice distance accepted when verifying the Weierstrass
  /// dictionary that pins the Riemann vector.
  double dictionary_tol = 1e-6;
};

/// Riemann vector kappa with the residuals of the dictionary check.
struct RiemannVector {
  Eigen::VectorXcd kappa;
  /// Lattice distance of each checked divisor class from its predicted
  /// half-period; the calibration divisor is first.
  double calibration_residual = 0;
  double max_residual = 0;
  int divisors_checked = 0;
};

/// Period matrices of mu_i = x^{i-1} dx / (2y) on the canonical symplectic
/// basis attached to the root order.
struct PeriodData {
  Eigen::MatrixXcd mu;        // A-periods: mu(i, k) = int_{A_k} mu_i
  Eigen::MatrixXcd mu_prime;  // B-periods
  Eigen::MatrixXcd mu_inv;
  SiegelPoint tau;
  std::complex<double> det_mu;

  /// Root indices (0-based) of the x-sorted chain the cycles were built on.
  std::vector<int> chain_order;
  /// Periods of the chain lifts c_1..c_{2g} (columns).
  Eigen::MatrixXcd chain_periods;
  /// Columns A_1..A_g, B_1..B_g in the chain-cycle basis.
  Eigen::MatrixXi cycles;
  /// int_infinity^{W_i} of the normalised differentials, i = 1..2g+2.
  std::vector<Eigen::VectorXcd> weierstrass_integrals;
  RiemannVector riemann;
  /// Human-readable record of each integration path and node count.
  std::vector<std::string> path_log;
  int max_nodes_used = 0;
};

/// Builds PeriodData; throws quad::NonConvergence or std::runtime_error when
/// the period lattice or the Weierstrass dictionary fails validation.
PeriodData periodMatrix(const HyperellipticCurve& curve, const PeriodOptions& opts = {});

/// Integral of (mu_1..mu_g) from infinity to a curve point along an
/// automatically planned path. The sign follows the sheet of `p`.
Eigen::VectorXcd integrateFromInfinity(const HyperellipticCurve& curve, const CurvePoint& p,
                                       const quad::Settings& settings, std::string* log = nullptr);
/// Same for the Weierstrass point W_index (1-based; 2g+2 is infinity).
Eigen::VectorXcd integrateFromInfinityToWeierstrass(const HyperellipticCurve& curve, int index,
                                                    const quad::Settings& settings, std::string* log = nullptr);

/// A point of a divisor: either a Weierstrass label or an explicit point.
struct DivisorPoint {
  std::optional<int> weierstrass;  // 1..2g+2
  CurvePoint point{};
  int multiplicity = 1;

  static DivisorPoint atWeierstrass(int index, int mult = 1) { return {index, {}, mult}; }
  static DivisorPoint at(CurvePoint p, int mult = 1) { return {std::nullopt, p, mult}; }
};
using Divisor = std::vector<DivisorPoint>;

struct JacobianPoint {
  Eigen::VectorXcd z;        // reduced representative
  Eigen::VectorXd lattice_a; // z = a + tau b, a, b in [-1/2, 1/2]
  Eigen::VectorXd lattice_b;
};

/// u(D) = sum m_k int_infinity^{P_k} nu + kappa, reduced mod Z^g + tau Z^g.
/// The divisor must have degree g - 1.
JacobianPoint abelJacobi(const HyperellipticCurve& curve, const PeriodData& periods, const Divisor& divisor,
                         const PeriodOptions& opts = {});

/// Calibrates kappa on the divisor W_1 + ... + W_{g-1} and checks every
/// divisor W_{i_1} + ... + W_{i_{g-1}} and W_{i_1} + ... + W_{i_g} - W_{i_{g+1}}
/// against the half-period of its predicted characteristic.
RiemannVector riemannVector(const HyperellipticCurve& curve, const PeriodData& periods,
                            const PeriodOptions& opts = {});

/// eta'' + tau eta', the point where theta vanishes to the order of theta[eta] at 0.
Eigen::VectorXcd halfPeriod(const Characteristic& eta, const SiegelPoint& tau);

JacobianPoint reduce(const SiegelPoint& tau, const Eigen::VectorXcd& z);

}  // namespace thetanull
