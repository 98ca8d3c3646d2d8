#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "thetanull/charcomb.hpp"
#include "thetanull/siegel.hpp"

namespace thetanull {

enum class Precision { standard, extended };

Precision parsePrecision(const std::string& name);
const char* toString(Precision p);

struct ThetaOptions {
  double tol = 1e-14;
  Precision precision = Precision::standard;
  std::size_t budget = 10'000'000;
};

struct ThetaValue {
  std::complex<double> value;
  double truncation_bound = 0;
  double lattice_radius = 0;
  /// log |value|, finite even when value itself would over- or underflow.
  double log_abs = 0;
  std::size_t terms = 0;
};

/// Complex number held as (log |w|, arg w); products stay in range.
struct LogComplex {
  double log_abs = 0;
  double arg = 0;

  static LogComplex from(std::complex<double> w) { return {std::log(std::abs(w)), std::arg(w)}; }
  LogComplex& operator*=(const LogComplex& o) {
    log_abs += o.log_abs;
    arg = std::remainder(arg + o.arg, 2 * std::numbers::pi);
    return *this;
  }
  LogComplex pow(int k) const { return {k * log_abs, std::remainder(k * arg, 2 * std::numbers::pi)}; }
  std::complex<double> value() const { return std::polar(std::exp(log_abs), arg); }
};

ThetaValue theta(const Characteristic& eta, const Eigen::VectorXcd& z, const SiegelPoint& tau,
                 const ThetaOptions& opts = {});

inline ThetaValue thetaNull(const Characteristic& eta, const SiegelPoint& tau,
                            const ThetaOptions& opts = {}) {
  return theta(eta, Eigen::VectorXcd::Zero(tau.genus()), tau, opts);
}

struct ThetaGradient {
  Eigen::VectorXcd gradient;
  double truncation_bound = 0;  // per component
  bool even_input = false;      // set when called with an even characteristic
};

/// z-gradient of theta[eta] at z = 0. For even eta the gradient vanishes
/// identically; the zero vector is returned with even_input set.
ThetaGradient thetaGradientNull(const Characteristic& eta, const SiegelPoint& tau,
                                const ThetaOptions& opts = {});

struct JacobianValue {
  std::complex<double> value;
  double error_bound = 0;
};

/// det of the matrix whose rows are the gradients at 0 of theta[eta_i].
/// Requires exactly g odd characteristics.
JacobianValue jacobianNullwert(const std::vector<Characteristic>& etas, const SiegelPoint& tau,
                               const ThetaOptions& opts = {});

/// Thetanullwerte and null gradients at one tau, computed once per
/// characteristic.
class ThetaNullTable {
public:
  explicit ThetaNullTable(SiegelPoint tau, ThetaOptions opts = {});

  const SiegelPoint& tau() const { return tau_; }
  const ThetaOptions& options() const { return opts_; }

  const ThetaValue& null(const Characteristic& eta);
  const ThetaGradient& gradient(const Characteristic& eta);
  JacobianValue jacobian(const std::vector<Characteristic>& etas);

private:
  SiegelPoint tau_;
  ThetaOptions opts_;
  std::map<Characteristic, ThetaValue> nulls_;
  std::map<Characteristic, ThetaGradient> grads_;
};

/// Determinant of a g x g matrix with a Hadamard-type bound on the effect of
/// per-entry row errors.
JacobianValue determinantWithBound(const Eigen::MatrixXcd& rows, const std::vector<double>& row_entry_error);

/// phi_g(tau) = prod over (g+1)-subsets T of {1..2g+1} of theta[eta_{T o U}](0)^8.
LogComplex logModularDiscriminant(ThetaNullTable& table);
std::complex<double> modularDiscriminant(int genus, const SiegelPoint& tau, const ThetaOptions& opts = {});

/// Klein's j(tau) for g = 1 through theta constants:
/// lambda = (theta[1/2;0] / theta[0;0])^4, j = 256 (1 - lambda + lambda^2)^3 / (lambda (1 - lambda))^2.
std::complex<double> ellipticJ(const SiegelPoint& tau, const ThetaOptions& opts = {});

}  // namespace thetanull
