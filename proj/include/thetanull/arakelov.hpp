#pragma once

#include <map>
#include <string>

#include "thetanull/periods.hpp"
#include "thetanull/theta.hpp"

namespace thetanull {

/// Nonnegative real kept in log form together with the named log factors it
/// is the product of.
struct NormedValue {
  double value = 0;
  double log_value = 0;
  std::map<std::string, double> log_components;

  /// (product of exp(component)) / value - 1.
  double auditDefect() const;
};

/// (det Y)^{1/4} exp(-pi y^T Y^{-1} y) |theta(z; tau)|, Y = Im tau, y = Im z.
NormedValue normTheta(const Eigen::VectorXcd& z, const SiegelPoint& tau, const ThetaOptions& opts = {});

/// G'(P, Q) from
///   G'(P, Q)^g = ||theta||(gP - Q) / prod_W ||theta||(gP - W)^{w / g^3},
/// w = g(g-1)/2 the weight of each Weierstrass point. P must not be a
/// Weierstrass point.
NormedValue greenPrime(const HyperellipticCurve& curve, const PeriodData& periods, const CurvePoint& p,
                       const DivisorPoint& q, const ThetaOptions& opts = {}, const PeriodOptions& popts = {});

/// (det Y)^{(g+2)/4} |J| for the odd part of the fundamental system of the
/// g-subset.
NormedValue normJ(const PeriodData& periods, const IndexSet& subset, ThetaNullTable& table);
NormedValue normJ(const PeriodData& periods, const IndexSet& subset, const ThetaOptions& opts = {});

/// (det Y)^{2r} |phi_g(tau)|, r = C(2g+1, g+1).
NormedValue normPhi(const PeriodData& periods, ThetaNullTable& table);
NormedValue normPhi(const PeriodData& periods, const ThetaOptions& opts = {});
/// 2^{-(4g+4)n} ||phi_g||, n = C(2g, g+1).
NormedValue normDelta(const PeriodData& periods, ThetaNullTable& table);
NormedValue normDelta(const PeriodData& periods, const ThetaOptions& opts = {});

struct PhiProductCheck {
  NormedValue norm_phi;
  NormedValue product;  // prod over (g+1)-subsets of ||theta||(u(D))^4
  double relative_residual = 0;
  int factors = 0;
  double min_factor_log = 0;  // smallest log ||theta|| among the factors
};

/// Compares ||phi_g|| with the product of ||theta||^4 at the classes of
/// W_{i_1} + ... + W_{i_g} - W_{i_{g+1}} over all (g+1)-subsets of
/// {1, ..., 2g+2}, the arguments taken from the Abel-Jacobi integrals.
PhiProductCheck lemmaFormulaPhi(const PeriodData& periods, const ThetaOptions& opts = {});

/// | |a| - |b| | / max(|a|, |b|) from log |a| - log |b|.
inline double relativeResidualFromLogs(double log_a, double log_b) { return -std::expm1(-std::abs(log_a - log_b)); }

}  // namespace thetanull
