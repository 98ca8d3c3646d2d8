#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace thetanull::quad {

struct Rule {
  std::vector<double> nodes;    // in [0, 1], ascending
  std::vector<double> weights;  // sum to 1
};

/// n-point Gauss-Legendre rule mapped to [0, 1]; cached per n.
const Rule& gaussLegendre(int n);

/// Chebyshev-Gauss nodes cos((2j-1) pi / 2n) in ascending order; every weight
/// is pi / n for integrands of the form F(t) / sqrt(1 - t^2).
std::vector<double> chebyshevNodes(int n);

class NonConvergence : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  double tol = 1e-14;   // relative to max(1, |integral|)
  int min_nodes = 16;
  int max_nodes = 1 << 17;
};

/// A vector-valued rule evaluator: given n, returns the n-point estimate.
using Estimator = std::function<Eigen::VectorXcd(int)>;

struct Estimate {
  Eigen::VectorXcd value;
  int nodes = 0;
  double change = 0;  // |I_n - I_{n/2}| at acceptance
};

/// Doubles n until two successive estimates agree to tol.
Estimate converge(const Estimator& estimator, const Settings& settings);

}  // namespace thetanull::quad
