#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thetanull/arakelov.hpp"
#include "thetanull/charcomb.hpp"
#include "thetanull/periods.hpp"
#include "thetanull/theta.hpp"

namespace thetanull {

struct CaseResult {
  std::string label;
  double relative_residual = 0;
  std::complex<double> ratio;  // lhs / rhs
};

struct IdentityReport {
  std::string identity_name;
  int genus = 0;
  /// | |lhs| - |rhs| | / max(|lhs|, |rhs|), worst case over `cases`.
  double relative_residual = 0;
  /// lhs / rhs of the worst case, present only when the residual is within
  /// tolerance.
  std::optional<std::complex<double>> empirical_sign;
  double tolerance_used = 0;
  std::string inputs_digest;
  /// The identity is only conjectured at this genus.
  bool conjecture = false;
  std::vector<CaseResult> cases;
  std::map<std::string, double> metrics;

  bool passed() const { return relative_residual < tolerance_used; }
};

/// Default residual tolerance by genus: 1e-10, 1e-6, 1e-4 for g = 1, 2, 3.
double defaultTolerance(int genus);
/// Log-space product identities: 1e-8, 1e-5, 1e-4 for g = 1, 2, 3.
double defaultProductTolerance(int genus);

/// theta'[1/2;1/2](0) against -pi theta[0;0] theta[1/2;0] theta[0;1/2] (g = 1).
IdentityReport checkJacobi(const SiegelPoint& tau, const ThetaOptions& opts = {}, double tol = 0);

/// |J(eta_k, eta_l)| against pi^2 prod_{m != k,l} |theta[eta_k + eta_l + eta_m](0)| over
/// the 15 pairs of odd characteristics (g = 2).
IdentityReport checkRosenhain(const SiegelPoint& tau, const ThetaOptions& opts = {}, double tol = 0);

/// |J(odd part)| against pi^g prod |theta[even part](0)| for one system.
IdentityReport checkGuardia(const SiegelPoint& tau, const FundamentalSystem& fs, const ThetaOptions& opts = {},
                            double tol = 0);
/// Same over every system indexed by a g-subset; worst case reported.
IdentityReport checkGuardiaAll(const SiegelPoint& tau, const ThetaOptions& opts = {}, double tol = 0);

/// prod over the C(2g+2, g) subset-indexed systems of |J| against
/// pi^{gm} prod_{T} |theta[eta_{T o U}](0)|^{2g+2}, m = C(2g+2, g).
IdentityReport checkProductTheorem(const SiegelPoint& tau, const ThetaOptions& opts = {}, double tol = 0);

/// prod ||J||^4 against pi^{4gm} ||phi_g||^{g+1}.
IdentityReport checkFourthPower(const PeriodData& periods, const ThetaOptions& opts = {}, double tol = 0);

/// |D|^n against pi^{4gr} |det mu|^{-4r} |phi_g(tau)|.
IdentityReport checkLockhart(const HyperellipticCurve& curve, const PeriodData& periods,
                             const ThetaOptions& opts = {}, double tol = 0);

/// Census of even Thetanullwerte below 1e-6 of the median magnitude. Passes
/// when the vanishing ones are exactly the even characteristics outside
/// {eta_{T o U}}. Metrics: "vanishing", "expected_vanishing", "even".
IdentityReport checkVanishingStructure(const SiegelPoint& tau, const ThetaOptions& opts = {},
                                       double threshold = 1e-6);

/// Short stable hash of a matrix, for report provenance.
std::string digest(const Eigen::MatrixXcd& m);

}  // namespace thetanull
