#include "thetanull/periods.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace thetanull {

namespace {

using Complex = std::complex<double>;

double segmentDistance(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  double t = len2 > 0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

// Distance from the segment [a, b] to the roots, ignoring root `skip`.
double clearance(const std::vector<Complex>& roots, Complex a, Complex b, int skip) {
  double c = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
    if (i == skip) continue;
    c = std::min(c, segmentDistance(roots[i], a, b));
  }
  return c;
}

// y continued along the straight segment from (x0, y0) to x. Each factor
// (x - r) / (x0 - r) moves on a segment from 1 that avoids the negative axis
// unless r lies on the path, so the principal branch is continuous.
Complex continueY(const std::vector<Complex>& roots, Complex x0, Complex y0, Complex x) {
  Complex y = y0;
  for (const auto& r : roots) y *= std::sqrt((x - r) / (x0 - r));
  return y;
}

Eigen::VectorXcd gaussLegendreLeg(int g, const quad::Settings& settings,
                                  const std::function<Eigen::VectorXcd(double)>& integrand, int* nodes) {
  auto est = quad::converge(
      [&](int n) {
        const auto& rule = quad::gaussLegendre(n);
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(g);
        for (int j = 0; j < n; ++j) acc += rule.weights[j] * integrand(rule.nodes[j]);
        return acc;
      },
      settings);
  if (nodes) *nodes = est.nodes;
  return est.value;
}

Eigen::VectorXcd powers(int g, Complex x, Complex scale) {
  Eigen::VectorXcd v(g);
  Complex term = scale;
  for (int k = 0; k < g; ++k) {
    v(k) = term;
    term *= x;
  }
  return v;
}

struct Path {
  Complex start;                 // point on the circle |x| = R_far
  std::vector<Complex> vertices; // waypoints after start, ending at the target
};

// Shortest polyline from the far circle to the target through a visibility
// graph on ring points around each root, keeping the given clearance.
Path planPath(const HyperellipticCurve& curve, Complex target, int target_root, double far_radius) {
  const auto& roots = curve.roots();
  const double sep = curve.separation();
  double guard = 0.2 * sep;
  if (target_root < 0) {
    double own = std::numeric_limits<double>::infinity();
    for (const auto& r : roots) own = std::min(own, std::abs(target - r));
    guard = std::min(guard, 0.9 * own);
  }

  std::vector<Complex> nodes{target};
  for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
    if (i == target_root) continue;
    for (int k = 0; k < 8; ++k) nodes.push_back(roots[i] + 0.5 * sep * std::polar(1.0, (k + 0.5) * std::numbers::pi / 4));
  }
  const int inner = static_cast<int>(nodes.size());
  for (int k = 0; k < 64; ++k) nodes.push_back(std::polar(far_radius, 2 * std::numbers::pi * k / 64));
  const int n = static_cast<int>(nodes.size());

  auto clear = [&](int i, int j) { return clearance(roots, nodes[i], nodes[j], target_root) >= guard; };

  // Prefer the straight path with the largest clearance.
  int best = -1;
  double best_clear = guard;
  for (int k = inner; k < n; ++k) {
    const double c = clearance(roots, nodes[k], target, target_root);
    if (c >= best_clear) {
      best_clear = c;
      best = k;
    }
  }
  if (best >= 0) return {nodes[best], {target}};

  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> prev(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[0] = 0;
  queue.push({0.0, 0});
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    if (u >= inner) {
      Path p{nodes[u], {}};
      for (int v = prev[u]; v >= 0; v = prev[v]) p.vertices.push_back(nodes[v]);
      return p;
    }
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      const double nd = d + std::abs(nodes[u] - nodes[v]);
      if (nd < dist[v] && clear(u, v)) {
        dist[v] = nd;
        prev[v] = u;
        queue.push({nd, v});
      }
    }
  }
  throw std::runtime_error("no integration path with sufficient clearance");
}

Eigen::VectorXcd integrateImpl(const HyperellipticCurve& curve, Complex target, int target_root,
                               const quad::Settings& settings, Complex* y_end, std::string* log) {
  const int g = curve.genus();
  const auto& roots = curve.roots();
  double rmax = 0;
  for (const auto& r : roots) rmax = std::max(rmax, std::abs(r));
  const double far_radius = 2 * rmax + 1;
  const Path path = planPath(curve, target, target_root, far_radius);
  std::ostringstream out;

  // Ray from infinity: x = X0 / s^2, y = X0^g sqrt(X0) s^{-2g-1} q(s).
  const Complex x0 = path.start;
  const Complex sx0 = std::sqrt(x0);
  auto q = [&](double s) {
    Complex acc = 1.0;
    for (const auto& r : roots) acc *= std::sqrt(1.0 - r * (s * s) / x0);
    return acc;
  };
  int nodes = 0;
  Eigen::VectorXcd total = gaussLegendreLeg(
      g, settings,
      [&](double s) {
        Eigen::VectorXcd v(g);
        const Complex base = -1.0 / (sx0 * q(s));
        for (int k = 0; k < g; ++k) {
          v(k) = base * std::pow(x0, static_cast<double>(k + 1 - g)) * std::pow(s, 2.0 * (g - k - 1));
        }
        return v;
      },
      &nodes);
  out << "ray inf -> " << x0 << " nodes=" << nodes;

  Complex xa = x0;
  Complex ya = std::pow(x0, static_cast<double>(g)) * sx0 * q(1.0);
  for (std::size_t leg = 0; leg < path.vertices.size(); ++leg) {
    const Complex xb = path.vertices[leg];
    const bool to_branch = target_root >= 0 && leg + 1 == path.vertices.size();
    if (to_branch) {
      // x = e + (xa - e) s^2 removes the square-root singularity at e.
      const Complex e = xb;
      std::vector<Complex> others;
      for (int i = 0; i < static_cast<int>(roots.size()); ++i)
        if (i != target_root) others.push_back(roots[i]);
      total += gaussLegendreLeg(
          g, settings,
          [&](double s) {
            const Complex x = e + (xa - e) * (s * s);
            Complex w = ya;
            for (const auto& r : others) w *= std::sqrt((x - r) / (xa - r));
            return Eigen::VectorXcd(powers(g, x, -(xa - e) / w));
          },
          &nodes);
      ya = 0;
    } else {
      total += gaussLegendreLeg(
          g, settings,
          [&](double s) {
            const Complex x = xa + (xb - xa) * s;
            return Eigen::VectorXcd(powers(g, x, (xb - xa) / (2.0 * continueY(roots, xa, ya, x))));
          },
          &nodes);
      ya = continueY(roots, xa, ya, xb);
    }
    out << "; " << xa << " -> " << xb << " nodes=" << nodes;
    xa = xb;
  }
  if (y_end) *y_end = ya;
  if (log) *log = out.str();
  return total;
}

}  // namespace

Eigen::VectorXcd integrateFromInfinity(const HyperellipticCurve& curve, const CurvePoint& p,
                                       const quad::Settings& settings, std::string* log) {
  const auto& roots = curve.roots();
  for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
    if (std::abs(p.x - roots[i]) <= 1e-12 * curve.rootScale()) {
      return integrateFromInfinityToWeierstrass(curve, i + 1, settings, log);
    }
  }
  const Complex fx = curve.f(p.x);
  if (std::abs(p.y * p.y - fx) > 1e-8 * std::max(1.0, std::abs(fx))) {
    throw std::invalid_argument("point is not on the curve");
  }
  Complex y_end;
  Eigen::VectorXcd v = integrateImpl(curve, p.x, -1, settings, &y_end, log);
  // The integral from infinity (a branch point) flips sign with the sheet.
  if (std::abs(y_end - p.y) > std::abs(y_end + p.y)) v = -v;
  return v;
}

Eigen::VectorXcd integrateFromInfinityToWeierstrass(const HyperellipticCurve& curve, int index,
                                                    const quad::Settings& settings, std::string* log) {
  const int g = curve.genus();
  if (index < 1 || index > 2 * g + 2) throw std::out_of_range("Weierstrass index out of range");
  if (index == 2 * g + 2) {
    if (log) *log = "W" + std::to_string(index) + ": base point";
    return Eigen::VectorXcd::Zero(g);
  }
  std::string leg_log;
  Eigen::VectorXcd v = integrateImpl(curve, curve.roots()[index - 1], index - 1, settings, nullptr, &leg_log);
  if (log) *log = "W" + std::to_string(index) + ": " + leg_log;
  return v;
}

JacobianPoint abelJacobi(const HyperellipticCurve& curve, const PeriodData& periods, const Divisor& divisor,
                         const PeriodOptions& opts) {
  const int g = curve.genus();
  int degree = 0;
  Eigen::VectorXcd z = periods.riemann.kappa;
  for (const auto& p : divisor) {
    degree += p.multiplicity;
    if (p.weierstrass) {
      if (*p.weierstrass < 1 || *p.weierstrass > 2 * g + 2) throw std::out_of_range("Weierstrass index out of range");
      z += static_cast<double>(p.multiplicity) * periods.weierstrass_integrals[*p.weierstrass - 1];
    } else {
      z += static_cast<double>(p.multiplicity) * (periods.mu_inv * integrateFromInfinity(curve, p.point, opts.quadrature));
    }
  }
  if (degree != g - 1) throw std::invalid_argument("divisor must have degree g - 1");
  return reduce(periods.tau, z);
}

}  // namespace thetanull
