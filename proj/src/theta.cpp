#include "thetanull/theta.hpp"

#include <cmath>
#include <stdexcept>

#include "thetanull/theta_series.hpp"

namespace thetanull {

Precision parsePrecision(const std::string& name) {
  if (name == "standard") return Precision::standard;
  if (name == "extended") return Precision::extended;
  throw std::invalid_argument("unknown precision mode: " + name);
}

const char* toString(Precision p) { return p == Precision::extended ? "extended" : "standard"; }

namespace {

template <class Scalar>
SeriesResult<Scalar> runSeries(const Characteristic& eta, const Eigen::VectorXcd& z, const SiegelPoint& tau,
                               const ThetaOptions& opts, bool with_gradient) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return thetaSeries<double>(eta, z, tau, opts.tol, with_gradient, opts.budget);
  } else {
    const auto tau_ext = tau.cast<Scalar>();
    const CVector<Scalar> z_ext = z.cast<std::complex<Scalar>>();
    return thetaSeries<Scalar>(eta, z_ext, tau_ext, static_cast<Scalar>(opts.tol), with_gradient, opts.budget);
  }
}

template <class Scalar>
ThetaValue toValue(const SeriesResult<Scalar>& r) {
  ThetaValue out;
  out.value = std::complex<double>(static_cast<double>(r.value.real()), static_cast<double>(r.value.imag()));
  out.truncation_bound = static_cast<double>(r.value_bound);
  out.lattice_radius = static_cast<double>(r.radius);
  using std::abs;
  using std::log;
  out.log_abs = static_cast<double>(r.log_scale + log(abs(r.reduced)));
  out.terms = r.terms;
  return out;
}

template <class Scalar>
ThetaGradient toGradient(const SeriesResult<Scalar>& r) {
  ThetaGradient out;
  out.gradient = Eigen::VectorXcd(r.gradient.size());
  for (Eigen::Index i = 0; i < r.gradient.size(); ++i) {
    out.gradient(i) = {static_cast<double>(r.gradient(i).real()), static_cast<double>(r.gradient(i).imag())};
  }
  out.truncation_bound = static_cast<double>(r.gradient_bound);
  return out;
}

}  // namespace

ThetaValue theta(const Characteristic& eta, const Eigen::VectorXcd& z, const SiegelPoint& tau,
                 const ThetaOptions& opts) {
  if (opts.precision == Precision::extended) return toValue(runSeries<long double>(eta, z, tau, opts, false));
  return toValue(runSeries<double>(eta, z, tau, opts, false));
}

ThetaGradient thetaGradientNull(const Characteristic& eta, const SiegelPoint& tau, const ThetaOptions& opts) {
  const int g = tau.genus();
  if (eta.genus() != g) throw std::invalid_argument("dimension mismatch");
  if (eta.isEven()) {
    ThetaGradient out;
    out.gradient = Eigen::VectorXcd::Zero(g);
    out.even_input = true;
    return out;
  }
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(g);
  if (opts.precision == Precision::extended) return toGradient(runSeries<long double>(eta, zero, tau, opts, true));
  return toGradient(runSeries<double>(eta, zero, tau, opts, true));
}

JacobianValue determinantWithBound(const Eigen::MatrixXcd& rows, const std::vector<double>& row_entry_error) {
  const Eigen::Index g = rows.rows();
  JacobianValue out;
  out.value = rows.determinant();
  // det(A + E) - det(A) <= prod(|a_i| + |e_i|) - prod |a_i|  (Hadamard)
  double with_err = 1.0;
  double without = 1.0;
  for (Eigen::Index i = 0; i < g; ++i) {
    const double a = rows.row(i).norm();
    const double e = std::sqrt(static_cast<double>(g)) * row_entry_error[i];
    with_err *= a + e;
    without *= a;
  }
  out.error_bound = with_err - without;
  return out;
}

JacobianValue jacobianNullwert(const std::vector<Characteristic>& etas, const SiegelPoint& tau,
                               const ThetaOptions& opts) {
  ThetaNullTable table(tau, opts);
  return table.jacobian(etas);
}

ThetaNullTable::ThetaNullTable(SiegelPoint tau, ThetaOptions opts) : tau_(std::move(tau)), opts_(opts) {}

const ThetaValue& ThetaNullTable::null(const Characteristic& eta) {
  auto it = nulls_.find(eta);
  if (it == nulls_.end()) it = nulls_.emplace(eta, thetaNull(eta, tau_, opts_)).first;
  return it->second;
}

const ThetaGradient& ThetaNullTable::gradient(const Characteristic& eta) {
  auto it = grads_.find(eta);
  if (it == grads_.end()) it = grads_.emplace(eta, thetaGradientNull(eta, tau_, opts_)).first;
  return it->second;
}

JacobianValue ThetaNullTable::jacobian(const std::vector<Characteristic>& etas) {
  const int g = tau_.genus();
  if (static_cast<int>(etas.size()) != g) {
    throw std::invalid_argument("Jacobian Nullwert needs exactly g characteristics");
  }
  Eigen::MatrixXcd rows(g, g);
  std::vector<double> errs(g);
  for (int i = 0; i < g; ++i) {
    if (!etas[i].isOdd()) throw std::invalid_argument("Jacobian Nullwert needs odd characteristics");
    const auto& grad = gradient(etas[i]);
    rows.row(i) = grad.gradient.transpose();
    errs[i] = grad.truncation_bound;
  }
  return determinantWithBound(rows, errs);
}

LogComplex logModularDiscriminant(ThetaNullTable& table) {
  const int g = table.tau().genus();
  LogComplex acc;
  for (const auto& t : subsets(2 * g + 1, g + 1)) {
    const auto& th = table.null(weierstrassChar(t, g));
    LogComplex f{th.log_abs, std::arg(th.value)};
    acc *= f.pow(8);
  }
  return acc;
}

std::complex<double> modularDiscriminant(int genus, const SiegelPoint& tau, const ThetaOptions& opts) {
  if (tau.genus() != genus) throw std::invalid_argument("genus mismatch");
  ThetaNullTable table(tau, opts);
  return logModularDiscriminant(table).value();
}

std::complex<double> ellipticJ(const SiegelPoint& tau, const ThetaOptions& opts) {
  if (tau.genus() != 1) throw std::invalid_argument("j-invariant needs genus 1");
  const auto t2 = thetaNull(Characteristic(1, 1, 0), tau, opts).value;
  const auto t3 = thetaNull(Characteristic(1, 0, 0), tau, opts).value;
  const auto q = t2 / t3;
  const auto lambda = q * q * q * q;
  const auto num = 1.0 - lambda + lambda * lambda;
  const auto den = lambda * (1.0 - lambda);
  return 256.0 * num * num * num / (den * den);
}

}  // namespace thetanull
