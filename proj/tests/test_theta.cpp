#include <doctest.h>

#include <complex>
#include <numbers>
#include <random>

#include "thetanull/corpus.hpp"
#include "thetanull/theta.hpp"
#include "thetanull/theta_series.hpp"

using namespace thetanull;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
const C I(0, 1);

SiegelPoint tau1(C t) { return SiegelPoint(Eigen::MatrixXcd::Constant(1, 1, t)); }
Eigen::VectorXcd vec(std::initializer_list<C> v) {
  Eigen::VectorXcd out(v.size());
  int i = 0;
  for (auto x : v) out(i++) = x;
  return out;
}

// Reference values from a 40-digit direct summation over |n_i| <= 40 (g = 1)
// and |n_i| <= 18 (g = 2).
constexpr double kTheta00_i = 1.0864348112133080145753161215;
constexpr double kTheta00_2i = 1.0037348854877390910476795951;
constexpr double kTheta10_i = 0.91357913815611682140724259340;
const C kTheta11_z(-0.58294958688692690682485416287, -0.22922958685918413155893821591);
const C kTheta01_z(0.99751406815580154349885851195, 0.024738216861570142372312926744);
const C kG2_10_01(0.41907971248199568829789958682, -0.22371912508659394066691556193);
const C kG2_00_00(1.1394307695806484392456160638, -0.021737638094136982736884851554);

SiegelPoint g2Tau() {
  Eigen::MatrixXcd t(2, 2);
  t << C(0.1, 1.2), C(0.3, -0.4), C(0.3, -0.4), C(-0.2, 0.9);
  return SiegelPoint(t);
}

}  // namespace

TEST_CASE("reference values at genus one") {
  const auto zero = Characteristic::parse("0|0");
  auto v = thetaNull(zero, tau1(I));
  CHECK(std::abs(v.value - kTheta00_i) < 1e-14);
  CHECK(v.truncation_bound <= 1e-14);
  CHECK(std::abs(thetaNull(zero, tau1(2.0 * I)).value - kTheta00_2i) < 1e-14);
  CHECK(std::abs(thetaNull(Characteristic::parse("1|0"), tau1(I)).value - kTheta10_i) < 1e-14);
  CHECK(std::abs(thetaNull(Characteristic::parse("0|1"), tau1(I)).value - kTheta10_i) < 1e-14);
  const auto t = tau1(C(0.2, 1.3));
  const auto z = vec({C(0.3, 0.1)});
  CHECK(std::abs(theta(Characteristic::parse("1|1"), z, t).value - kTheta11_z) < 1e-14);
  CHECK(std::abs(theta(Characteristic::parse("0|1"), z, t).value - kTheta01_z) < 1e-14);
}

TEST_CASE("reference values at genus two") {
  const auto t = g2Tau();
  CHECK(std::abs(theta(Characteristic::parse("10|01"), vec({C(0.25, 0.1), C(-0.15, 0.05)}), t).value - kG2_10_01) <
        1e-13);
  CHECK(std::abs(thetaNull(Characteristic::zero(2), t).value - kG2_00_00) < 1e-13);
  ThetaOptions ext;
  ext.precision = Precision::extended;
  CHECK(std::abs(thetaNull(Characteristic::zero(2), t, ext).value - kG2_00_00) < 1e-14);
}

TEST_CASE("odd characteristics vanish at zero") {
  std::mt19937_64 rng(11);
  for (int g = 1; g <= 3; ++g) {
    const auto t = randomSiegelPoint(g, rng);
    for (const auto& c : oddCharacteristics(g)) CHECK(std::abs(thetaNull(c, t).value) < 1e-13);
  }
}

TEST_CASE("quasi-periodicity and parity") {
  std::mt19937_64 rng(12);
  const double tol = 1e-14;
  for (int g = 1; g <= 3; ++g) {
    const auto t = randomSiegelPoint(g, rng);
    for (int trial = 0; trial < 4; ++trial) {
      Eigen::VectorXcd z(g);
      Eigen::VectorXd m(g), n(g);
      for (int i = 0; i < g; ++i) {
        z(i) = C(uniform01(rng) - 0.5, 0.4 * (uniform01(rng) - 0.5));
        m(i) = static_cast<double>(static_cast<int>(rng() % 5) - 2);
        n(i) = static_cast<double>(static_cast<int>(rng() % 3) - 1);
      }
      for (const auto& c : allCharacteristics(g)) {
        const C base = theta(c, z, t).value;
        Eigen::VectorXd top(g), bottom(g);
        for (int i = 0; i < g; ++i) {
          top(i) = c.topEntry(i);
          bottom(i) = c.bottomEntry(i);
        }
        const C shifted = theta(c, Eigen::VectorXcd(z + m.cast<C>()), t).value;
        CHECK(std::abs(shifted - std::exp(2 * kPi * I * top.dot(m)) * base) <= 10 * tol * std::max(1.0, std::abs(base)));
        CHECK(std::abs(theta(c, Eigen::VectorXcd(-z), t).value - double(c.parity()) * base) <= 10 * tol);
        if (g <= 2) {
          const Eigen::VectorXcd nc = n.cast<C>();
          const C factor = std::exp(-kPi * I * nc.dot(t.tau() * nc) - 2 * kPi * I * nc.dot(z + bottom.cast<C>()));
          const C moved = theta(c, Eigen::VectorXcd(z + t.tau() * nc), t).value;
          CHECK(std::abs(moved - factor * base) <= 10 * tol * std::max(1.0, std::abs(factor)));
        }
      }
    }
  }
}

TEST_CASE("large imaginary part stays finite in log form") {
  const auto t = g2Tau();
  const auto z = vec({C(0.1, 40.0), C(-0.2, -35.0)});
  const auto v = theta(Characteristic::zero(2), z, t);
  CHECK(std::isfinite(v.log_abs));
  const auto r = reduceModLattice(t, Eigen::VectorXcd(z));
  CHECK(std::isfinite(theta(Characteristic::zero(2), r, t).log_abs));
}

TEST_CASE("null gradients") {
  const auto even = thetaGradientNull(Characteristic::parse("0|0"), tau1(I));
  CHECK(even.even_input);
  CHECK(even.gradient.isZero(0));

  const auto g = thetaGradientNull(Characteristic::parse("1|1"), tau1(I));
  CHECK_FALSE(g.even_input);
  const double jacobi = -kPi * kTheta00_i * kTheta10_i * kTheta10_i;
  CHECK(std::abs(g.gradient(0) - jacobi) < 1e-13);
  CHECK(std::abs(g.gradient(0) - C(-2.8486946039877873160799850571, 0)) < 1e-13);
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(13);
  const double h = 1e-5;
  for (int g = 1; g <= 3; ++g) {
    const auto t = randomSiegelPoint(g, rng);
    for (const auto& c : oddCharacteristics(g)) {
      const auto grad = thetaGradientNull(c, t).gradient;
      for (int i = 0; i < g; ++i) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(g);
        e(i) = h;
        const C fd = (theta(c, e, t).value - theta(c, Eigen::VectorXcd(-e), t).value) / (2 * h);
        CHECK(std::abs(fd - grad(i)) <= 1e-8 * std::max(1.0, std::abs(grad(i))));
      }
    }
  }
}

TEST_CASE("Jacobian Nullwert is alternating") {
  std::mt19937_64 rng(14);
  const auto t = randomSiegelPoint(2, rng);
  const auto odd = oddCharacteristics(2);
  CHECK(std::abs(jacobianNullwert({odd[0], odd[0]}, t).value) < 1e-12);
  const C a = jacobianNullwert({odd[0], odd[1]}, t).value;
  const C b = jacobianNullwert({odd[1], odd[0]}, t).value;
  CHECK(std::abs(a + b) < 1e-12);
  CHECK(jacobianNullwert({odd[0], odd[1]}, t).error_bound < 1e-10);
  CHECK_THROWS_AS(jacobianNullwert({odd[0], Characteristic::zero(2)}, t), std::invalid_argument);
  CHECK_THROWS_AS(jacobianNullwert({odd[0]}, t), std::invalid_argument);
}

TEST_CASE("refinement stays within the certified bound") {
  std::mt19937_64 rng(15);
  for (int g = 1; g <= 3; ++g) {
    const auto t = randomSiegelPoint(g, rng);
    const auto c = evenCharacteristics(g).back();
    double tol = 1e-4;
    ThetaOptions o;
    o.tol = tol;
    ThetaValue prev = thetaNull(c, t, o);
    CHECK(prev.truncation_bound <= tol);
    for (int k = 0; k < 10; ++k) {
      o.tol /= 2;
      const ThetaValue next = thetaNull(c, t, o);
      CHECK(std::abs(next.value - prev.value) <= prev.truncation_bound + 1e-15);
      CHECK(next.truncation_bound <= o.tol);
      prev = next;
    }
  }
}

TEST_CASE("lattice budget") {
  ThetaOptions o;
  o.budget = 5;
  const SiegelPoint t(Eigen::MatrixXcd::Identity(3, 3) * C(0, 0.3));
  CHECK_THROWS_AS(thetaNull(Characteristic::zero(3), t, o), LatticeBudgetExceeded);
  CHECK_NOTHROW(thetaNull(Characteristic::zero(3), t));
}

TEST_CASE("extended precision agrees with standard") {
  std::mt19937_64 rng(16);
  ThetaOptions ext;
  ext.precision = Precision::extended;
  for (int g = 1; g <= 3; ++g) {
    const auto t = randomSiegelPoint(g, rng);
    for (const auto& c : evenCharacteristics(g)) {
      CHECK(std::abs(thetaNull(c, t).value - thetaNull(c, t, ext).value) < 1e-12);
    }
  }
  CHECK((parsePrecision("extended") == Precision::extended));
  CHECK_THROWS(parsePrecision("quad"));
}

TEST_CASE("Siegel point validation") {
  Eigen::MatrixXcd t(2, 2);
  t << C(0, 1), C(0.1, 0), C(0.2, 0), C(0, 1);
  CHECK_THROWS_AS(SiegelPoint{t}, std::invalid_argument);
  t << C(0, 1), C(0, 2), C(0, 2), C(0, 1);
  CHECK_THROWS_AS(SiegelPoint{t}, std::invalid_argument);
  const auto p = g2Tau();
  CHECK(p.symmetryDefect() == 0);
  CHECK((p.cholesky() * p.cholesky().transpose() - kPi * p.imag()).norm() < 1e-14);
}

TEST_CASE("modular discriminant and j") {
  const auto t = tau1(I);
  const double prod = kTheta00_i * kTheta10_i * kTheta10_i;
  CHECK(std::abs(modularDiscriminant(1, t) - std::pow(prod, 8)) < 1e-13);
  const C rho = std::exp(2 * kPi * I / 3.0);
  CHECK(std::abs(ellipticJ(t) - 1728.0) < 1e-9);
  CHECK(std::abs(ellipticJ(tau1(rho))) < 1e-9);
  CHECK(std::abs(ellipticJ(tau1(I + 1.0)) - 1728.0) < 1e-9);
  // j(2i) = 66^3
  CHECK(std::abs(ellipticJ(tau1(2.0 * I)) - 287496.0) < 1e-6);
  std::mt19937_64 rng(17);
  const auto t2 = randomSiegelPoint(2, rng);
  CHECK(std::abs(modularDiscriminant(2, t2)) > 0);
}
