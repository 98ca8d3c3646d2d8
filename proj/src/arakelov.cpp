#include "thetanull/arakelov.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace thetanull {

namespace {

NormedValue fromComponents(std::map<std::string, double> comps) {
  NormedValue v;
  for (const auto& [name, x] : comps) v.log_value += x;
  v.value = std::exp(v.log_value);
  v.log_components = std::move(comps);
  return v;
}

double logDetImag(const SiegelPoint& tau) {
  // sum of log diagonal of the Cholesky factor of pi Y, minus g log pi
  const auto& l = tau.cholesky();
  double s = 0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) s += 2 * std::log(l(i, i));
  return s - tau.genus() * std::log(std::numbers::pi);
}

Eigen::VectorXcd bareIntegral(const PeriodData& periods, const HyperellipticCurve& curve, const DivisorPoint& p,
                              const PeriodOptions& popts) {
  if (p.weierstrass) {
    const int idx = *p.weierstrass;
    if (idx < 1 || idx > static_cast<int>(periods.weierstrass_integrals.size())) {
      throw std::out_of_range("Weierstrass index out of range");
    }
    return periods.weierstrass_integrals[idx - 1];
  }
  return periods.mu_inv * integrateFromInfinity(curve, p.point, popts.quadrature);
}

}  // namespace

double NormedValue::auditDefect() const {
  double prod = 1;
  for (const auto& [name, x] : log_components) prod *= std::exp(x);
  return prod / value - 1;
}

NormedValue normTheta(const Eigen::VectorXcd& z, const SiegelPoint& tau, const ThetaOptions& opts) {
  const Eigen::VectorXd y = z.imag();
  const ThetaValue t = theta(Characteristic::zero(tau.genus()), z, tau, opts);
  return fromComponents({
      {"det_imag_quarter", 0.25 * logDetImag(tau)},
      {"gaussian", -std::numbers::pi * y.dot(tau.imagInverse() * y)},
      {"abs_theta", t.log_abs},
  });
}

NormedValue greenPrime(const HyperellipticCurve& curve, const PeriodData& periods, const CurvePoint& p,
                       const DivisorPoint& q, const ThetaOptions& opts, const PeriodOptions& popts) {
  const int g = curve.genus();
  for (const auto& r : curve.roots()) {
    if (std::abs(p.x - r) <= 1e-12 * curve.rootScale()) throw std::invalid_argument("P must not be a Weierstrass point");
  }
  const Eigen::VectorXcd gp = static_cast<double>(g) * bareIntegral(periods, curve, DivisorPoint::at(p), popts) +
                              periods.riemann.kappa;
  const Eigen::VectorXcd uq = gp - bareIntegral(periods, curve, q, popts);
  const double num = normTheta(reduce(periods.tau, uq).z, periods.tau, opts).log_value;
  const double weight = g * (g - 1) / 2.0;
  double den = 0;
  if (weight > 0) {
    for (int i = 1; i <= 2 * g + 2; ++i) {
      const Eigen::VectorXcd uw = gp - periods.weierstrass_integrals[i - 1];
      den += weight / (g * g * g) * normTheta(reduce(periods.tau, uw).z, periods.tau, opts).log_value;
    }
  }
  return fromComponents({{"numerator_root", num / g}, {"weierstrass_root", -den / g}});
}

NormedValue normJ(const PeriodData& periods, const IndexSet& subset, ThetaNullTable& table) {
  const int g = periods.tau.genus();
  const auto fs = fundamentalSystemFromSubset(subset, g);
  const auto j = table.jacobian(fs.odd_part);
  return fromComponents({
      {"det_imag_power", (g + 2) / 4.0 * logDetImag(periods.tau)},
      {"abs_jacobian", std::log(std::abs(j.value))},
  });
}

NormedValue normJ(const PeriodData& periods, const IndexSet& subset, const ThetaOptions& opts) {
  ThetaNullTable table(periods.tau, opts);
  return normJ(periods, subset, table);
}

NormedValue normPhi(const PeriodData& periods, ThetaNullTable& table) {
  const int g = periods.tau.genus();
  const double r = static_cast<double>(binomial(2 * g + 1, g + 1));
  return fromComponents({
      {"det_imag_power", 2 * r * logDetImag(periods.tau)},
      {"abs_phi", logModularDiscriminant(table).log_abs},
  });
}

NormedValue normPhi(const PeriodData& periods, const ThetaOptions& opts) {
  ThetaNullTable table(periods.tau, opts);
  return normPhi(periods, table);
}

NormedValue normDelta(const PeriodData& periods, ThetaNullTable& table) {
  const int g = periods.tau.genus();
  const double n = static_cast<double>(binomial(2 * g, g + 1));
  auto comps = normPhi(periods, table).log_components;
  comps["power_of_two"] = -(4.0 * g + 4.0) * n * std::log(2.0);
  return fromComponents(std::move(comps));
}

NormedValue normDelta(const PeriodData& periods, const ThetaOptions& opts) {
  ThetaNullTable table(periods.tau, opts);
  return normDelta(periods, table);
}

PhiProductCheck lemmaFormulaPhi(const PeriodData& periods, const ThetaOptions& opts) {
  const int g = periods.tau.genus();
  PhiProductCheck out;
  out.norm_phi = normPhi(periods, opts);
  double sum = 0;
  out.min_factor_log = std::numeric_limits<double>::infinity();
  for (const auto& t : subsets(2 * g + 2, g + 1)) {
    Eigen::VectorXcd u = periods.riemann.kappa - periods.weierstrass_integrals[t.back() - 1];
    for (std::size_t k = 0; k + 1 < t.size(); ++k) u += periods.weierstrass_integrals[t[k] - 1];
    const double l = normTheta(reduce(periods.tau, u).z, periods.tau, opts).log_value;
    out.min_factor_log = std::min(out.min_factor_log, l);
    sum += 4 * l;
    ++out.factors;
  }
  out.product = fromComponents({{"sum_of_fourth_powers", sum}});
  out.relative_residual = relativeResidualFromLogs(out.norm_phi.log_value, out.product.log_value);
  return out;
}

}  // namespace thetanull
