#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace thetanull {

template <class Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <class Scalar>
using RMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Point of the Siegel upper half-space: symmetric tau with Im tau > 0.
///
/// The constructor symmetrises tau after checking the defect, then caches
/// Im tau, its inverse, the lower Cholesky factor of pi Im tau and the
/// smallest eigenvalue of pi Im tau.
template <class Scalar>
class BasicSiegelPoint {
public:
  using Complex = std::complex<Scalar>;

  /// tau = i (genus 1).
  BasicSiegelPoint() : BasicSiegelPoint(CMatrix<Scalar>::Constant(1, 1, Complex(0, 1))) {}

  explicit BasicSiegelPoint(const CMatrix<Scalar>& tau, Scalar symmetry_tol = Scalar(1e-8)) {
    if (tau.rows() != tau.cols() || tau.rows() < 1) {
      throw std::invalid_argument("tau must be a non-empty square matrix");
    }
    const Eigen::Index g = tau.rows();
    Scalar defect = 0;
    Scalar scale = 1;
    for (Eigen::Index j = 0; j < g; ++j) {
      for (Eigen::Index k = 0; k < g; ++k) {
        using std::abs;
        defect = std::max(defect, abs(tau(j, k) - tau(k, j)));
        scale = std::max(scale, abs(tau(j, k)));
      }
    }
    if (defect > symmetry_tol * scale) {
      throw std::invalid_argument("tau is not symmetric");
    }
    symmetry_defect_ = defect;
    tau_ = (tau + tau.transpose()) / Scalar(2);
    imag_ = tau_.imag();
    const Scalar pi = std::numbers::pi_v<Scalar>;
    Eigen::LLT<RMatrix<Scalar>> llt(pi * imag_);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("Im tau is not positive definite");
    }
    chol_ = llt.matrixL();
    for (Eigen::Index j = 0; j < g; ++j) {
      if (!(chol_(j, j) > 0)) throw std::invalid_argument("Im tau is not positive definite");
    }
    imag_inv_ = imag_.inverse();
    Eigen::SelfAdjointEigenSolver<RMatrix<Scalar>> eig(pi * imag_, Eigen::EigenvaluesOnly);
    min_eig_ = eig.eigenvalues().minCoeff();
    if (!(min_eig_ > 0)) throw std::invalid_argument("Im tau is not positive definite");
  }

  int genus() const { return static_cast<int>(tau_.rows()); }
  const CMatrix<Scalar>& tau() const { return tau_; }
  const RMatrix<Scalar>& imag() const { return imag_; }
  const RMatrix<Scalar>& imagInverse() const { return imag_inv_; }
  /// Lower factor L with L L^T = pi Im tau.
  const RMatrix<Scalar>& cholesky() const { return chol_; }
  /// Smallest eigenvalue of pi Im tau.
  Scalar minEigenvalue() const { return min_eig_; }
  Scalar symmetryDefect() const { return symmetry_defect_; }
  Scalar detImag() const { return imag_.determinant(); }

  template <class Other>
  BasicSiegelPoint<Other> cast() const {
    return BasicSiegelPoint<Other>(tau_.template cast<std::complex<Other>>());
  }

private:
  CMatrix<Scalar> tau_;
  RMatrix<Scalar> imag_;
  RMatrix<Scalar> imag_inv_;
  RMatrix<Scalar> chol_;
  Scalar min_eig_ = 0;
  Scalar symmetry_defect_ = 0;
};

using SiegelPoint = BasicSiegelPoint<double>;

/// z = a + tau b with real a, b; returns (a, b).
template <class Scalar>
std::pair<RVector<Scalar>, RVector<Scalar>> latticeCoordinates(const BasicSiegelPoint<Scalar>& tau,
                                                               const CVector<Scalar>& z) {
  RVector<Scalar> b = tau.imagInverse() * z.imag();
  RVector<Scalar> a = z.real() - tau.tau().real() * b;
  return {a, b};
}

/// Representative of z modulo Z^g + tau Z^g with lattice coordinates in
/// [-1/2, 1/2].
template <class Scalar>
CVector<Scalar> reduceModLattice(const BasicSiegelPoint<Scalar>& tau, const CVector<Scalar>& z) {
  auto [a, b] = latticeCoordinates(tau, z);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    using std::round;
    a(i) -= round(a(i));
    b(i) -= round(b(i));
  }
  return a.template cast<std::complex<Scalar>>() + tau.tau() * b.template cast<std::complex<Scalar>>();
}

/// Euclidean norm of the reduced representative of z.
template <class Scalar>
Scalar latticeDistance(const BasicSiegelPoint<Scalar>& tau, const CVector<Scalar>& z) {
  return reduceModLattice(tau, z).norm();
}

}  // namespace thetanull
