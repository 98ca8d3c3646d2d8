#include "thetanull/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace thetanull {

namespace {

constexpr double kPi = std::numbers::pi;

void requireGenus(const SiegelPoint& tau, int g, const char* what) {
  if (tau.genus() != g) throw std::invalid_argument(std::string(what) + " needs genus " + std::to_string(g));
}

// One case compared in log space.
CaseResult compare(std::string label, LogComplex lhs, LogComplex rhs) {
  CaseResult c;
  c.label = std::move(label);
  c.relative_residual = relativeResidualFromLogs(lhs.log_abs, rhs.log_abs);
  c.ratio = std::polar(std::exp(lhs.log_abs - rhs.log_abs), lhs.arg - rhs.arg);
  return c;
}

void finish(IdentityReport& r) {
  r.relative_residual = 0;
  const CaseResult* worst = nullptr;
  for (const auto& c : r.cases) {
    if (!worst || c.relative_residual > worst->relative_residual) worst = &c;
  }
  if (worst) r.relative_residual = worst->relative_residual;
  if (worst && r.passed()) r.empirical_sign = worst->ratio;
  r.metrics["cases"] = static_cast<double>(r.cases.size());
}

std::string labelOf(const std::vector<Characteristic>& etas) {
  std::string s;
  for (const auto& e : etas) {
    if (!s.empty()) s += ",";
    s += e.toString();
  }
  return s;
}

LogComplex logOf(std::complex<double> w) { return LogComplex::from(w); }

}  // namespace

double defaultTolerance(int genus) {
  if (genus <= 1) return 1e-10;
  if (genus == 2) return 1e-6;
  return 1e-4;
}

double defaultProductTolerance(int genus) {
  if (genus <= 1) return 1e-8;
  return genus == 2 ? 1e-5 : defaultTolerance(genus);
}

std::string digest(const Eigen::MatrixXcd& m) {
  // FNV-1a over the decimal rendering, stable across platforms.
  std::uint64_t h = 1469598103934665603ull;
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const int n = std::snprintf(buf, sizeof buf, "%.12e,%.12e;", m(i, j).real(), m(i, j).imag());
      for (int k = 0; k < n; ++k) {
        h ^= static_cast<unsigned char>(buf[k]);
        h *= 1099511628211ull;
      }
    }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

IdentityReport checkJacobi(const SiegelPoint& tau, const ThetaOptions& opts, double tol) {
  requireGenus(tau, 1, "checkJacobi");
  ThetaNullTable table(tau, opts);
  IdentityReport r;
  r.identity_name = "jacobi";
  r.genus = 1;
  r.tolerance_used = tol > 0 ? tol : defaultTolerance(1);
  r.inputs_digest = digest(tau.tau());
  const Characteristic odd = Characteristic::parse("1|1");
  LogComplex rhs = logOf(kPi);
  for (const auto& e : evenCharacteristics(1)) rhs *= logOf(table.null(e).value);
  r.cases.push_back(compare("1|1", logOf(table.gradient(odd).gradient(0)), rhs));
  finish(r);
  return r;
}

IdentityReport checkRosenhain(const SiegelPoint& tau, const ThetaOptions& opts, double tol) {
  requireGenus(tau, 2, "checkRosenhain");
  ThetaNullTable table(tau, opts);
  IdentityReport r;
  r.identity_name = "rosenhain";
  r.genus = 2;
  r.tolerance_used = tol > 0 ? tol : defaultTolerance(2);
  r.inputs_digest = digest(tau.tau());
  const auto odd = oddCharacteristics(2);
  for (std::size_t k = 0; k < odd.size(); ++k)
    for (std::size_t l = k + 1; l < odd.size(); ++l) {
      LogComplex rhs = logOf(kPi * kPi);
      for (std::size_t m = 0; m < odd.size(); ++m) {
        if (m == k || m == l) continue;
        const Characteristic e = odd[k] + odd[l] + odd[m];
        if (!e.isEven()) throw std::logic_error("Rosenhain factor characteristic is odd");
        rhs *= logOf(table.null(e).value);
      }
      r.cases.push_back(compare(labelOf({odd[k], odd[l]}), logOf(table.jacobian({odd[k], odd[l]}).value), rhs));
    }
  finish(r);
  return r;
}

namespace {

CaseResult guardiaCase(ThetaNullTable& table, const FundamentalSystem& fs) {
  const int g = fs.genus;
  LogComplex rhs = logOf(std::pow(kPi, g));
  for (const auto& e : fs.even_part) rhs *= logOf(table.null(e).value);
  return compare(labelOf(fs.odd_part), logOf(table.jacobian(fs.odd_part).value), rhs);
}

}  // namespace

IdentityReport checkGuardia(const SiegelPoint& tau, const FundamentalSystem& fs, const ThetaOptions& opts,
                            double tol) {
  if (fs.genus != tau.genus()) throw std::invalid_argument("genus mismatch");
  ThetaNullTable table(tau, opts);
  IdentityReport r;
  r.identity_name = "guardia";
  r.genus = fs.genus;
  r.tolerance_used = tol > 0 ? tol : defaultTolerance(fs.genus);
  r.inputs_digest = digest(tau.tau());
  r.conjecture = fs.genus >= 4;
  r.cases.push_back(guardiaCase(table, fs));
  finish(r);
  return r;
}

IdentityReport checkGuardiaAll(const SiegelPoint& tau, const ThetaOptions& opts, double tol) {
  const int g = tau.genus();
  ThetaNullTable table(tau, opts);
  IdentityReport r;
  r.identity_name = "guardia";
  r.genus = g;
  r.tolerance_used = tol > 0 ? tol : defaultTolerance(g);
  r.inputs_digest = digest(tau.tau());
  r.conjecture = g >= 4;
  for (const auto& fs : familyBySubset(g)) r.cases.push_back(guardiaCase(table, fs));
  finish(r);
  return r;
}

IdentityReport checkProductTheorem(const SiegelPoint& tau, const ThetaOptions& opts, double tol) {
  const int g = tau.genus();
  ThetaNullTable table(tau, opts);
  IdentityReport r;
  r.identity_name = "product";
  r.genus = g;
  r.tolerance_used = tol > 0 ? tol : defaultProductTolerance(g);
  r.inputs_digest = digest(tau.tau());
  const long long m = binomial(2 * g + 2, g);
  LogComplex lhs;
  for (const auto& fs : familyBySubset(g)) lhs *= logOf(table.jacobian(fs.odd_part).value);
  LogComplex rhs = logOf(kPi).pow(static_cast<int>(g * m));
  for (const auto& t : subsets(2 * g + 1, g + 1)) rhs *= logOf(table.null(weierstrassChar(t, g)).value).pow(2 * g + 2);
  r.cases.push_back(compare("all systems", lhs, rhs));
  r.metrics["m"] = static_cast<double>(m);
  r.metrics["log_lhs"] = lhs.log_abs;
  r.metrics["log_rhs"] = rhs.log_abs;
  finish(r);
  return r;
}

IdentityReport checkFourthPower(const PeriodData& periods, const ThetaOptions& opts, double tol) {
  const int g = periods.tau.genus();
  ThetaNullTable table(periods.tau, opts);
  IdentityReport r;
  r.identity_name = "fourth_power";
  r.genus = g;
  r.tolerance_used = tol > 0 ? tol : defaultProductTolerance(g);
  r.inputs_digest = digest(periods.tau.tau());
  const long long m = binomial(2 * g + 2, g);
  double lhs = 0;
  for (const auto& s : subsets(2 * g + 2, g)) lhs += 4 * normJ(periods, s, table).log_value;
  const double rhs = 4.0 * g * m * std::log(kPi) + (g + 1) * normPhi(periods, table).log_value;
  r.cases.push_back(compare("all subsets", {lhs, 0}, {rhs, 0}));
  r.metrics["log_lhs"] = lhs;
  r.metrics["log_rhs"] = rhs;
  finish(r);
  return r;
}

IdentityReport checkLockhart(const HyperellipticCurve& curve, const PeriodData& periods, const ThetaOptions& opts,
                             double tol) {
  const int g = curve.genus();
  ThetaNullTable table(periods.tau, opts);
  IdentityReport r;
  r.identity_name = "lockhart";
  r.genus = g;
  r.tolerance_used = tol > 0 ? tol : defaultProductTolerance(g);
  r.inputs_digest = digest(periods.tau.tau());
  const int n = static_cast<int>(binomial(2 * g, g + 1));
  const int rr = static_cast<int>(binomial(2 * g + 1, g + 1));
  const LogComplex lhs = logOf(discriminant(curve)).pow(n);
  LogComplex rhs = logOf(kPi).pow(4 * g * rr);
  rhs *= logOf(periods.det_mu).pow(-4 * rr);
  rhs *= logModularDiscriminant(table);
  r.cases.push_back(compare("D^n", lhs, rhs));
  r.metrics["n"] = n;
  r.metrics["r"] = rr;
  r.metrics["log_lhs"] = lhs.log_abs;
  r.metrics["log_rhs"] = rhs.log_abs;
  finish(r);
  return r;
}

IdentityReport checkVanishingStructure(const SiegelPoint& tau, const ThetaOptions& opts, double threshold) {
  const int g = tau.genus();
  ThetaNullTable table(tau, opts);
  IdentityReport r;
  r.identity_name = "vanishing";
  r.genus = g;
  r.tolerance_used = 0.5;
  r.inputs_digest = digest(tau.tau());

  const auto even = evenCharacteristics(g);
  std::vector<double> mags;
  for (const auto& e : even) mags.push_back(std::abs(table.null(e).value));
  std::vector<double> sorted = mags;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];

  std::vector<Characteristic> nonvanishing;
  for (const auto& t : subsets(2 * g + 1, g + 1)) nonvanishing.push_back(weierstrassChar(t, g));
  std::sort(nonvanishing.begin(), nonvanishing.end());
  nonvanishing.erase(std::unique(nonvanishing.begin(), nonvanishing.end()), nonvanishing.end());

  int vanishing = 0;
  int mismatched = 0;
  double smallest_predicted = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < even.size(); ++i) {
    const bool small = mags[i] < threshold * median;
    const bool predicted = std::binary_search(nonvanishing.begin(), nonvanishing.end(), even[i]);
    if (small) ++vanishing;
    if (small == predicted) ++mismatched;
    if (predicted) smallest_predicted = std::min(smallest_predicted, mags[i] / median);
    CaseResult c;
    c.label = even[i].toString();
    c.relative_residual = small == predicted ? 1.0 : 0.0;
    c.ratio = mags[i] / median;
    r.cases.push_back(c);
  }
  finish(r);
  r.empirical_sign.reset();
  r.metrics["even"] = static_cast<double>(even.size());
  r.metrics["vanishing"] = vanishing;
  r.metrics["expected_vanishing"] = static_cast<double>(even.size() - nonvanishing.size());
  r.metrics["mismatched"] = mismatched;
  r.metrics["smallest_predicted_over_median"] = smallest_predicted;
  return r;
}

}  // namespace thetanull
