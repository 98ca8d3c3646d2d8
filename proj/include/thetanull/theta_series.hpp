#pragma once

// Ellipsoidal-truncation engine for the theta series with characteristics.
// Header-only so that it can be instantiated for any floating scalar; the
// double front-end in theta.hpp dispatches to double or long double.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "thetanull/charcomb.hpp"
#include "thetanull/siegel.hpp"

namespace thetanull {

class LatticeBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

template <class Scalar>
struct SeriesResult {
  std::complex<Scalar> value;
  CVector<Scalar> gradient;   // empty unless requested
  Scalar value_bound = 0;     // certified bound on the omitted tail of value
  Scalar gradient_bound = 0;  // per-component bound on the omitted gradient tail
  Scalar radius = 0;
  Scalar log_scale = 0;       // Re of the quasi-periodicity exponent
  std::complex<Scalar> reduced;  // value = exp(shift) * reduced
  std::size_t terms = 0;
};

namespace detail {

/// Compensated complex accumulator.
template <class Scalar>
class KahanSum {
public:
  void add(std::complex<Scalar> x) {
    addPart(x.real(), re_, cre_);
    addPart(x.imag(), im_, cim_);
  }
  std::complex<Scalar> value() const { return {re_, im_}; }

private:
  static void addPart(Scalar x, Scalar& sum, Scalar& comp) {
    const Scalar y = x - comp;
    const Scalar t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  Scalar re_ = 0, im_ = 0, cre_ = 0, cim_ = 0;
};

/// int_T^inf t^k exp(-t^2) dt for k = 0..kmax, T >= 0.
template <class Scalar>
std::vector<Scalar> gaussianMoments(Scalar t, int kmax) {
  using std::erfc;
  using std::exp;
  using std::pow;
  std::vector<Scalar> m(kmax + 1);
  const Scalar e = exp(-t * t);
  m[0] = std::sqrt(std::numbers::pi_v<Scalar>) / 2 * erfc(t);
  if (kmax >= 1) m[1] = e / 2;
  for (int k = 2; k <= kmax; ++k) m[k] = pow(t, k - 1) * e / 2 + Scalar(k - 1) / 2 * m[k - 2];
  return m;
}

/// Bound on sum over shifted lattice points p with |p| > R of w(|p|) e^{-|p|^2},
/// where rho is a lower bound on the shortest lattice vector and
/// w(s) = alpha + beta * s. Valid for R >= rho.
///
/// Each point owns a ball of radius rho/2; on that ball |x| - rho/2 <= |p| <=
/// |x| + rho/2, so the sum is dominated by an integral over |x| > R - rho/2.
template <class Scalar>
Scalar latticeTailBound(int g, Scalar rho, Scalar radius, Scalar alpha, Scalar beta) {
  const Scalar t0 = radius - rho;
  if (t0 < 0) return std::numeric_limits<Scalar>::infinity();
  // integrand (t + rho/2)^{g-1} (alpha + beta (t + rho)) e^{-t^2}
  std::vector<Scalar> poly(g + 1, Scalar(0));
  for (int k = 0; k <= g - 1; ++k) {
    using std::pow;
    const Scalar c = Scalar(binomial(g - 1, k)) * pow(rho / 2, g - 1 - k);
    poly[k] += c * (alpha + beta * rho);
    poly[k + 1] += c * beta;
  }
  const auto m = gaussianMoments(t0, g);
  Scalar integral = 0;
  for (int k = 0; k <= g; ++k) integral += poly[k] * m[k];
  using std::pow;
  return Scalar(g) * pow(Scalar(2) / rho, g) * integral;
}

}  // namespace detail

/// Sums theta[eta](z; tau) and optionally its z-gradient.
///
/// Im z is first reduced into the fundamental cell of the Im tau lattice and
/// the exact quasi-periodicity factor is reapplied at the end. Lattice points
/// are enumerated inside the ellipsoid |L^T (n - c)| <= R with pi Im tau = L L^T,
/// c the centre of the Gaussian envelope. R is the smallest radius on a 1/16
/// grid whose certified tail bound is below tol (relative to the reduced
/// cell, i.e. absolute when z lies in the fundamental cell).
template <class Scalar>
SeriesResult<Scalar> thetaSeries(const Characteristic& eta, const CVector<Scalar>& z,
                                 const BasicSiegelPoint<Scalar>& tau, Scalar tol,
                                 bool with_gradient, std::size_t budget) {
  using Complex = std::complex<Scalar>;
  const int g = tau.genus();
  if (eta.genus() != g || z.size() != g) throw std::invalid_argument("dimension mismatch");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Complex two_pi_i(0, 2 * pi);

  RVector<Scalar> a(g), b(g);
  for (int i = 0; i < g; ++i) {
    a(i) = Scalar(eta.topEntry(i));
    b(i) = Scalar(eta.bottomEntry(i));
  }

  // z = zr + tau m with m integral, Im zr in the fundamental cell.
  RVector<Scalar> w = tau.imagInverse() * z.imag();
  RVector<Scalar> m(g);
  for (int i = 0; i < g; ++i) {
    using std::round;
    m(i) = round(w(i));
  }
  const CVector<Scalar> mc = m.template cast<Complex>();
  const CVector<Scalar> zr = z - tau.tau() * mc;
  const Complex shift_exponent =
      -Complex(0, pi) * (mc.transpose() * tau.tau() * mc)(0) -
      two_pi_i * (mc.transpose() * (zr + b.template cast<Complex>()))(0);

  const RVector<Scalar> yr = zr.imag();
  const RVector<Scalar> wr = tau.imagInverse() * yr;
  const RVector<Scalar> centre = -a - wr;
  using std::exp;
  using std::sqrt;
  const Scalar envelope = exp(pi * yr.dot(wr));
  const Scalar rho = sqrt(tau.minEigenvalue());

  auto radiusFor = [&](Scalar alpha, Scalar beta) {
    Scalar r = std::max(rho, Scalar(0.5));
    for (int iter = 0; iter < 4096; ++iter) {
      if (envelope * detail::latticeTailBound(g, rho, r, alpha, beta) <= tol) return r;
      r += Scalar(1) / 16;
    }
    throw LatticeBudgetExceeded("no truncation radius reaches the requested tolerance");
  };
  Scalar radius = radiusFor(1, 0);
  // |2 pi (n + a)_j| <= 2 pi (|p| / rho + |Im tau^{-1} y|)
  const Scalar grad_alpha = 2 * pi * wr.norm();
  const Scalar grad_beta = 2 * pi / rho;
  if (with_gradient) radius = std::max(radius + 1, radiusFor(grad_alpha, grad_beta));

  // Fincke-Pohst enumeration with the upper factor U = L^T.
  const RMatrix<Scalar> upper = tau.cholesky().transpose();
  const RMatrix<Scalar> x_re = tau.tau().real();
  const RMatrix<Scalar> y_im = tau.imag();
  const RVector<Scalar> phase_shift = zr.real() + b;

  detail::KahanSum<Scalar> value_sum;
  std::vector<detail::KahanSum<Scalar>> grad_sum(with_gradient ? g : 0);
  std::size_t terms = 0;
  RVector<Scalar> n(g);
  RVector<Scalar> v(g);

  auto visit = [&]() {
    if (++terms > budget) throw LatticeBudgetExceeded("lattice point budget exceeded");
    v = n + a;
    const Scalar re = -pi * v.dot(y_im * v) - 2 * pi * v.dot(yr);
    const Scalar im = pi * v.dot(x_re * v) + 2 * pi * v.dot(phase_shift);
    const Complex term = std::polar(exp(re), im);
    value_sum.add(term);
    for (int j = 0; j < static_cast<int>(grad_sum.size()); ++j) grad_sum[j].add(two_pi_i * v(j) * term);
  };

  const Scalar r2 = radius * radius;
  // partial(i) = sum of squared components i..g-1 of U (n - c)
  std::vector<Scalar> partial(g + 1, Scalar(0));
  auto recurse = [&](auto&& self, int level) -> void {
    if (level < 0) {
      visit();
      return;
    }
    Scalar s = 0;
    for (int j = level + 1; j < g; ++j) s += upper(level, j) * (n(j) - centre(j));
    const Scalar diag = upper(level, level);
    const Scalar rem = r2 - partial[level + 1];
    if (rem < 0) return;
    const Scalar half = sqrt(rem) / diag;
    const Scalar mid = centre(level) - s / diag;
    using std::ceil;
    using std::floor;
    const long long lo = static_cast<long long>(ceil(mid - half));
    const long long hi = static_cast<long long>(floor(mid + half));
    for (long long k = lo; k <= hi; ++k) {
      n(level) = Scalar(k);
      const Scalar comp = diag * (n(level) - centre(level)) + s;
      partial[level] = partial[level + 1] + comp * comp;
      if (partial[level] <= r2) self(self, level - 1);
    }
  };
  recurse(recurse, g - 1);

  SeriesResult<Scalar> out;
  const Complex factor = exp(shift_exponent);
  const Scalar factor_abs = exp(shift_exponent.real());
  out.value = factor * value_sum.value();
  out.log_scale = shift_exponent.real();
  out.reduced = value_sum.value();
  out.radius = radius;
  out.terms = terms;
  out.value_bound = factor_abs * envelope * detail::latticeTailBound(g, rho, radius, Scalar(1), Scalar(0));
  if (with_gradient) {
    // d/dz of exp(shift) theta(zr) with zr = z - tau m: the shift exponent
    // contributes -2 pi i m.
    CVector<Scalar> grad(g);
    for (int j = 0; j < g; ++j) grad(j) = grad_sum[j].value();
    out.gradient = factor * (grad - two_pi_i * mc * value_sum.value());
    out.gradient_bound = factor_abs * envelope *
                         (detail::latticeTailBound(g, rho, radius, grad_alpha, grad_beta) +
                          2 * pi * m.norm() * detail::latticeTailBound(g, rho, radius, Scalar(1), Scalar(0)));
  }
  return out;
}

}  // namespace thetanull
