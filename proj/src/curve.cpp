#include "thetanull/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace thetanull {

namespace {

using Complex = std::complex<double>;

Eigen::VectorXcd coefficientsFromRoots(const std::vector<Complex>& roots) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(roots.size() + 1);
  c(0) = 1.0;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    // multiply by (x - r)
    for (std::size_t j = k + 1; j > 0; --j) c(j) = c(j - 1) - roots[k] * c(j);
    c(0) = -roots[k] * c(0);
  }
  return c;
}

Complex hornerAscending(const Eigen::VectorXcd& c, Complex x) {
  Complex acc = 0.0;
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) acc = acc * x + c(i);
  return acc;
}

}  // namespace

HyperellipticCurve HyperellipticCurve::fromRoots(std::vector<Complex> roots) {
  const int d = static_cast<int>(roots.size());
  if (d < 3 || d % 2 == 0) {
    throw std::invalid_argument("need an odd number (>= 3) of finite branch points; use oddModelFromEven for even degree");
  }
  HyperellipticCurve c;
  c.genus_ = (d - 1) / 2;
  c.scale_ = 1.0;
  for (const auto& r : roots) c.scale_ = std::max(c.scale_, std::abs(r));
  double sep = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) sep = std::min(sep, std::abs(roots[i] - roots[j]));
  if (!(sep > 1e-6 * c.scale_)) throw std::invalid_argument("repeated or nearly repeated roots");
  c.separation_ = sep;
  c.roots_ = std::move(roots);
  c.coeffs_ = coefficientsFromRoots(c.roots_);
  return c;
}

std::vector<Complex> polynomialRoots(const Eigen::VectorXcd& ascending) {
  const Eigen::Index d = ascending.size() - 1;
  if (d < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -ascending(i) / ascending(d);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  Eigen::VectorXcd deriv(d);
  for (Eigen::Index i = 1; i <= d; ++i) deriv(i - 1) = static_cast<double>(i) * ascending(i);
  for (auto& r : roots) {
    for (int iter = 0; iter < 8; ++iter) {
      const Complex fp = hornerAscending(deriv, r);
      if (std::abs(fp) == 0.0) break;
      const Complex step = hornerAscending(ascending, r) / fp;
      r -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
    }
  }
  return roots;
}

HyperellipticCurve HyperellipticCurve::fromCoefficients(const std::vector<Complex>& descending) {
  std::vector<Complex> desc = descending;
  if (desc.size() % 2 == 1) desc.insert(desc.begin(), Complex(1.0));
  if (desc.size() < 4) throw std::invalid_argument("degree must be at least 3");
  if (std::abs(desc.front() - 1.0) > 0.0) throw std::invalid_argument("polynomial must be monic");
  Eigen::VectorXcd asc(desc.size());
  for (std::size_t i = 0; i < desc.size(); ++i) asc(desc.size() - 1 - i) = desc[i];
  auto roots = polynomialRoots(asc);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  HyperellipticCurve c = fromRoots(roots);
  const double mismatch = (c.coeffs_ - asc).cwiseAbs().maxCoeff();
  if (mismatch > 1e-8 * std::pow(c.scale_, static_cast<double>(asc.size() - 1))) {
    throw std::invalid_argument("root finding failed to reproduce the coefficients");
  }
  return c;
}

Complex HyperellipticCurve::f(Complex x) const {
  Complex acc = 1.0;
  for (const auto& r : roots_) acc *= x - r;
  return acc;
}

HyperellipticCurve HyperellipticCurve::permuted(const std::vector<int>& perm) const {
  if (perm.size() != roots_.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Complex> r(roots_.size());
  std::vector<bool> used(roots_.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] < 0 || perm[i] >= static_cast<int>(roots_.size()) || used[perm[i]]) {
      throw std::invalid_argument("not a permutation");
    }
    used[perm[i]] = true;
    r[i] = roots_[perm[i]];
  }
  return fromRoots(std::move(r));
}

HyperellipticCurve HyperellipticCurve::scaled(Complex lambda) const {
  std::vector<Complex> r = roots_;
  for (auto& x : r) x *= lambda;
  return fromRoots(std::move(r));
}

CurvePoint pointOnCurve(const HyperellipticCurve& curve, Complex x, int sheet) {
  if (sheet != 1 && sheet != -1) throw std::invalid_argument("sheet must be +1 or -1");
  return {x, static_cast<double>(sheet) * std::sqrt(curve.f(x))};
}

Complex discriminantFromRoots(const std::vector<Complex>& roots) {
  Complex d = 1.0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const Complex diff = roots[i] - roots[j];
      d *= diff * diff;
    }
  return d;
}

Complex discriminant(const HyperellipticCurve& curve) { return discriminantFromRoots(curve.roots()); }

namespace {

__int128 checkedMul(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("discriminant exceeds 128-bit range");
  return r;
}

__int128 checkedSub(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("discriminant exceeds 128-bit range");
  return r;
}

// Bareiss fraction-free determinant.
__int128 bareissDeterminant(std::vector<std::vector<__int128>> m) {
  const std::size_t n = m.size();
  __int128 sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = checkedSub(checkedMul(m[i][j], m[k][k]), checkedMul(m[i][k], m[k][j])) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

__int128 discriminantExact(const std::vector<long long>& descending) {
  std::vector<long long> f = descending;
  while (!f.empty() && f.front() == 0) f.erase(f.begin());
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) throw std::invalid_argument("polynomial must have positive degree");
  if (d == 1) return 1;
  std::vector<long long> fp(d);
  for (int i = 0; i < d; ++i) fp[i] = f[i] * (d - i);
  // Sylvester matrix of f (degree d) and f' (degree d-1): size 2d-1.
  const int n = 2 * d - 1;
  std::vector<std::vector<__int128>> s(n, std::vector<__int128>(n, 0));
  for (int r = 0; r < d - 1; ++r)
    for (int i = 0; i <= d; ++i) s[r][r + i] = f[i];
  for (int r = 0; r < d; ++r)
    for (int i = 0; i < d; ++i) s[d - 1 + r][r + i] = fp[i];
  const __int128 res = bareissDeterminant(std::move(s));
  const __int128 lead = f.front();
  if (res % lead != 0) throw std::logic_error("resultant not divisible by leading coefficient");
  const bool negate = ((static_cast<long long>(d) * (d - 1) / 2) % 2) == 1;
  return negate ? -(res / lead) : res / lead;
}

std::string toString(__int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string s;
  while (v != 0) {
    const int digit = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (neg ? -digit : digit)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

HyperellipticCurve oddModelFromEven(const std::vector<Complex>& even_roots, int at_infinity) {
  if (even_roots.size() < 4 || even_roots.size() % 2 == 1) {
    throw std::invalid_argument("even model needs an even number (>= 4) of roots");
  }
  if (at_infinity < 0 || at_infinity >= static_cast<int>(even_roots.size())) {
    throw std::out_of_range("root index out of range");
  }
  const Complex r = even_roots[at_infinity];
  std::vector<Complex> roots;
  for (int i = 0; i < static_cast<int>(even_roots.size()); ++i) {
    if (i == at_infinity) continue;
    const Complex diff = even_roots[i] - r;
    if (std::abs(diff) == 0.0) throw std::invalid_argument("repeated roots");
    roots.push_back(1.0 / diff);
  }
  return HyperellipticCurve::fromRoots(std::move(roots));
}

}  // namespace thetanull
