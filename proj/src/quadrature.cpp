#include "thetanull/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace thetanull::quad {

namespace {

Rule computeGaussLegendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x descends with i; map [-1, 1] -> [0, 1] and store ascending
    rule.nodes[i] = (1.0 - x) / 2.0;
    rule.nodes[n - 1 - i] = (1.0 + x) / 2.0;
    rule.weights[i] = w / 2.0;
    rule.weights[n - 1 - i] = w / 2.0;
  }
  return rule;
}

}  // namespace

const Rule& gaussLegendre(int n) {
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, computeGaussLegendre(n)).first;
  return it->second;
}

std::vector<double> chebyshevNodes(int n) {
  std::vector<double> t(n);
  for (int j = 1; j <= n; ++j) t[n - j] = std::cos((2.0 * j - 1.0) * std::numbers::pi / (2.0 * n));
  return t;
}

Estimate converge(const Estimator& estimator, const Settings& settings) {
  int n = settings.min_nodes;
  Eigen::VectorXcd prev = estimator(n);
  while (2 * n <= settings.max_nodes) {
    n *= 2;
    Eigen::VectorXcd cur = estimator(n);
    const double change = (cur - prev).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, cur.cwiseAbs().maxCoeff());
    if (change <= settings.tol * scale) return {cur, n, change};
    prev = std::move(cur);
  }
  throw NonConvergence("quadrature did not converge within the node budget");
}

}  // namespace thetanull::quad
