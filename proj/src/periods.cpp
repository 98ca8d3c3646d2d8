#include "thetanull/periods.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace thetanull {

namespace {

using Complex = std::complex<double>;

struct ChainSegment {
  Eigen::VectorXcd integral;  // int_a^b x^k dx / (2y), k = 0..g-1
  Complex dir_start;          // direction of y / sqrt|x - a| as x -> a
  Complex dir_end;            // direction of y / sqrt|x - b| as x -> b
  int nodes = 0;
};

// Lift of the straight segment between roots a and b on the sheet with
// y(midpoint) = principal sqrt f(midpoint). With x = (a+b)/2 + (b-a)/2 t,
//   y = y_mid sqrt(1 - t^2) H(t),  H(t) = prod_{other roots} sqrt((x - r) / (mid - r)),
// so x^k dx / 2y = x^k (b - a) / (4 y_mid H(t)) dt / sqrt(1 - t^2).
ChainSegment chainSegment(const HyperellipticCurve& curve, int ia, int ib, const quad::Settings& settings) {
  const auto& roots = curve.roots();
  const int g = curve.genus();
  const Complex a = roots[ia];
  const Complex b = roots[ib];
  const Complex mid = 0.5 * (a + b);
  const Complex y_mid = std::sqrt(curve.f(mid));

  auto h = [&](Complex x) {
    Complex acc = 1.0;
    for (int r = 0; r < static_cast<int>(roots.size()); ++r) {
      if (r == ia || r == ib) continue;
      acc *= std::sqrt((x - roots[r]) / (mid - roots[r]));
    }
    return acc;
  };

  auto estimator = [&](int n) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(g);
    for (double t : quad::chebyshevNodes(n)) {
      const Complex x = mid + 0.5 * (b - a) * t;
      Complex term = (b - a) / (4.0 * y_mid * h(x));
      for (int k = 0; k < g; ++k) {
        acc(k) += term;
        term *= x;
      }
    }
    return Eigen::VectorXcd(acc * (std::numbers::pi / n));
  };
  const auto est = quad::converge(estimator, settings);
  ChainSegment seg;
  seg.integral = est.value;
  seg.nodes = est.nodes;
  seg.dir_start = y_mid * h(a);
  seg.dir_end = y_mid * h(b);
  return seg;
}

// Counter-clockwise angle in (0, 2 pi] from direction u to direction v.
double ccwAngle(Complex u, Complex v) {
  double d = std::arg(v) - std::arg(u);
  while (d <= 0) d += 2 * std::numbers::pi;
  while (d > 2 * std::numbers::pi) d -= 2 * std::numbers::pi;
  return d;
}

std::vector<int> sortedChain(const HyperellipticCurve& curve) {
  const auto& roots = curve.roots();
  std::vector<int> order(roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (roots[i].real() != roots[j].real()) return roots[i].real() < roots[j].real();
    return roots[i].imag() < roots[j].imag();
  });
  return order;
}

}  // namespace

PeriodData periodMatrix(const HyperellipticCurve& curve, const PeriodOptions& opts) {
  const int g = curve.genus();
  const int nc = 2 * g;
  const auto& roots = curve.roots();
  PeriodData out;
  out.chain_order = sortedChain(curve);
  const auto& chain = out.chain_order;

  // Lifts c_j = gamma_j - sigma(gamma_j) of the x-monotone polyline through
  // the roots. The sheet of each segment is the counter-clockwise
  // continuation around the shared branch point of the previous one, which
  // makes c_j . c_{j+1} the same for every j.
  std::vector<ChainSegment> segs;
  for (int j = 0; j < nc; ++j) {
    ChainSegment s = chainSegment(curve, chain[j], chain[j + 1], opts.quadrature);
    if (j > 0) {
      const Complex e = roots[chain[j]];
      const double delta = ccwAngle(roots[chain[j - 1]] - e, roots[chain[j + 1]] - e);
      const Complex expected = segs.back().dir_end * std::polar(1.0, delta / 2);
      if ((std::conj(s.dir_start) * expected).real() < 0) {
        s.integral = -s.integral;
        s.dir_start = -s.dir_start;
        s.dir_end = -s.dir_end;
      }
    }
    std::ostringstream log;
    log << "chain c" << (j + 1) << ": W" << (chain[j] + 1) << " -> W" << (chain[j + 1] + 1)
        << " chebyshev nodes=" << s.nodes;
    out.path_log.push_back(log.str());
    out.max_nodes_used = std::max(out.max_nodes_used, s.nodes);
    segs.push_back(std::move(s));
  }
  out.chain_periods = Eigen::MatrixXcd(g, nc);
  for (int j = 0; j < nc; ++j) out.chain_periods.col(j) = 2.0 * segs[j].integral;

  // Intersection form on the chain basis.
  Eigen::MatrixXi form = Eigen::MatrixXi::Zero(nc, nc);
  for (int j = 0; j + 1 < nc; ++j) {
    form(j, j + 1) = -1;
    form(j + 1, j) = 1;
  }

  // Bring the chain order to the user's root order with half-twists; the
  // half-twist exchanging adjacent points acts on homology as the Dehn twist
  // about the corresponding chain cycle.
  Eigen::MatrixXi cyc = Eigen::MatrixXi::Identity(nc, nc);
  std::vector<int> cur = chain;
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (int j = 0; j + 1 < nc + 1; ++j) {
      if (cur[j] <= cur[j + 1]) continue;
      const Eigen::VectorXi c = cyc.col(j);
      for (int i = 0; i < nc; ++i) {
        if (i == j) continue;
        const int k = cyc.col(i).dot(form * c);
        cyc.col(i) += k * c;
      }
      std::swap(cur[j], cur[j + 1]);
      swapped = true;
    }
  }

  // Canonical basis: A_k = c_{2k-1}, B_k = -(c_{2k} + c_{2k+2} + ... + c_{2g}).
  out.cycles = Eigen::MatrixXi::Zero(nc, nc);
  for (int k = 0; k < g; ++k) {
    out.cycles.col(k) = cyc.col(2 * k);
    for (int m = k; m < g; ++m) out.cycles.col(g + k) -= cyc.col(2 * m + 1);
  }
  const Eigen::MatrixXcd basis = out.cycles.cast<Complex>();
  out.mu = out.chain_periods * basis.leftCols(g);
  out.mu_prime = out.chain_periods * basis.rightCols(g);

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(out.mu);
  if (!lu.isInvertible()) throw std::runtime_error("A-period matrix is singular");
  out.mu_inv = lu.inverse();
  out.det_mu = lu.determinant();
  const Eigen::MatrixXcd tau = out.mu_inv * out.mu_prime;
  out.tau = SiegelPoint(tau, 1e-8);

  for (int i = 1; i <= 2 * g + 2; ++i) {
    std::string log;
    const Eigen::VectorXcd raw = integrateFromInfinityToWeierstrass(curve, i, opts.quadrature, &log);
    out.weierstrass_integrals.push_back(out.mu_inv * raw);
    if (!log.empty()) out.path_log.push_back(log);
  }
  out.riemann = riemannVector(curve, out, opts);
  if (out.riemann.max_residual > opts.dictionary_tol) {
    std::ostringstream msg;
    msg << "Weierstrass dictionary check failed: max lattice distance " << out.riemann.max_residual;
    throw std::runtime_error(msg.str());
  }
  return out;
}

Eigen::VectorXcd halfPeriod(const Characteristic& eta, const SiegelPoint& tau) {
  const int g = tau.genus();
  Eigen::VectorXcd top(g), bottom(g);
  for (int i = 0; i < g; ++i) {
    top(i) = eta.topEntry(i);
    bottom(i) = eta.bottomEntry(i);
  }
  return bottom + tau.tau() * top;
}

JacobianPoint reduce(const SiegelPoint& tau, const Eigen::VectorXcd& z) {
  auto [a, b] = latticeCoordinates(tau, z);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a(i) -= std::round(a(i));
    b(i) -= std::round(b(i));
  }
  JacobianPoint p;
  p.z = a.cast<Complex>() + tau.tau() * b.cast<Complex>();
  p.lattice_a = a;
  p.lattice_b = b;
  return p;
}

RiemannVector riemannVector(const HyperellipticCurve& curve, const PeriodData& periods, const PeriodOptions&) {
  const int g = curve.genus();
  const int n = 2 * g + 2;
  const auto& w = periods.weierstrass_integrals;
  auto bare = [&](const IndexSet& plus, const IndexSet& minus) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(g);
    for (int i : plus) acc += w[i - 1];
    for (int i : minus) acc -= w[i - 1];
    return acc;
  };

  RiemannVector rv;
  IndexSet calib;
  for (int i = 1; i <= g - 1; ++i) calib.push_back(i);
  rv.kappa = reduce(periods.tau, halfPeriod(weierstrassChar(calib, g), periods.tau) - bare(calib, {})).z;

  auto residual = [&](const IndexSet& plus, const IndexSet& minus, const IndexSet& t) {
    const Eigen::VectorXcd u = bare(plus, minus) + rv.kappa;
    return latticeDistance(periods.tau, Eigen::VectorXcd(u - halfPeriod(weierstrassChar(t, g), periods.tau)));
  };
  rv.calibration_residual = residual(calib, {}, calib);
  rv.max_residual = rv.calibration_residual;
  rv.divisors_checked = 1;
  for (const auto& t : subsets(n, g - 1)) {
    rv.max_residual = std::max(rv.max_residual, residual(t, {}, t));
    ++rv.divisors_checked;
  }
  for (const auto& t : subsets(n, g + 1)) {
    const IndexSet plus(t.begin(), t.end() - 1);
    rv.max_residual = std::max(rv.max_residual, residual(plus, {t.back()}, t));
    ++rv.divisors_checked;
  }
  return rv;
}

}  // namespace thetanull
