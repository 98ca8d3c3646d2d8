// thetanull: command-line driver. JSON on stdout (or --output), summary on stderr.
//
// exit status: 0 ok, 1 identity above tolerance, 2 malformed input,
// 3 numerical failure (quadrature or lattice budget).

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetanull/arakelov.hpp"
#include "thetanull/complex_io.hpp"
#include "thetanull/corpus.hpp"
#include "thetanull/verify.hpp"

#ifndef THETANULL_DATA_DIR
#define THETANULL_DATA_DIR "data"
#endif

using json = nlohmann::json;
using namespace thetanull;

namespace {

constexpr int kSchemaVersion = 1;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat JSON object of option values; CLI11 takes it through --config.
class JsonConfig : public CLI::Config {
public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.name = key;
      item.inputs.push_back(render(value));
      items.push_back(std::move(item));
    }
    return items;
  }

private:
  static std::string renderScalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
      char buf[32];
      auto r = std::to_chars(buf, buf + sizeof buf, v.get<double>());
      return std::string(buf, r.ptr);
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number()) return formatComplex(complexFromJson(v));
    throw CLI::ConversionError("unsupported config value " + v.dump());
  }
  static std::string joinList(const json& v, char sep, bool nested) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += sep;
      s += nested ? joinList(e, ',', false) : renderScalar(e);
    }
    return s;
  }
  static std::string render(const json& v) {
    if (!v.is_array()) return renderScalar(v);
    if (v.size() == 2 && v[0].is_number()) return renderScalar(v);
    const bool matrix = !v.empty() && v[0].is_array() && !(v[0].size() == 2 && v[0][0].is_number());
    return joinList(v, matrix ? ';' : ',', matrix);
  }
};

struct RunConfig {
  std::string command;
  int genus = 0;
  std::string roots;
  std::string coeffs;
  std::string tau;
  double tol = 1e-14;
  std::string precision = "auto";
  std::uint64_t seed = 20240611;
  std::string output;
  bool emit_audit = false;
  bool list_f = false;
  std::string identity = "all";
  std::string chars;
  std::string z;
  std::string points;
  std::string corpus;
  int max_genus = 3;
};

ThetaOptions thetaOptions(const RunConfig& cfg, int genus) {
  ThetaOptions o;
  o.tol = cfg.tol;
  if (cfg.precision == "auto") {
    o.precision = genus >= 3 ? Precision::extended : Precision::standard;
  } else {
    o.precision = parsePrecision(cfg.precision);
  }
  return o;
}

bool hasCurve(const RunConfig& cfg) { return !cfg.roots.empty() || !cfg.coeffs.empty(); }

HyperellipticCurve curveFrom(const RunConfig& cfg) {
  if (!cfg.roots.empty() && !cfg.coeffs.empty()) throw InputError("give either --roots or --coeffs, not both");
  if (!hasCurve(cfg)) throw InputError("a curve (--roots or --coeffs) is required");
  const HyperellipticCurve c = !cfg.roots.empty() ? HyperellipticCurve::fromRoots(parseComplexList(cfg.roots))
                                                  : HyperellipticCurve::fromCoefficients(parseComplexList(cfg.coeffs));
  if (cfg.genus != 0 && cfg.genus != c.genus()) {
    throw InputError("--genus " + std::to_string(cfg.genus) + " does not match the curve (genus " +
                     std::to_string(c.genus()) + ")");
  }
  return c;
}

SiegelPoint tauFrom(const RunConfig& cfg) {
  SiegelPoint tau(parseComplexMatrix(cfg.tau));
  if (cfg.genus != 0 && cfg.genus != tau.genus()) throw InputError("--genus does not match --tau");
  return tau;
}

json subsetJson(const IndexSet& s) { return json(s); }

json charList(const std::vector<Characteristic>& cs) {
  auto a = json::array();
  for (const auto& c : cs) a.push_back(c.toString());
  return a;
}

json normedJson(const NormedValue& v, bool audit) {
  json j{{"value", v.value}, {"log_value", v.log_value}};
  if (audit) j["log_components"] = v.log_components;
  return j;
}

json reportJson(const IdentityReport& r) {
  json j{{"schema_version", kSchemaVersion},
         {"kind", "identity_report"},
         {"identity_name", r.identity_name},
         {"genus", r.genus},
         {"relative_residual", r.relative_residual},
         {"tolerance_used", r.tolerance_used},
         {"passed", r.passed()},
         {"conjecture", r.conjecture},
         {"inputs_digest", r.inputs_digest},
         {"metrics", r.metrics}};
  j["empirical_sign"] = r.empirical_sign ? toJson(*r.empirical_sign) : json(nullptr);
  return j;
}

json periodsJson(const HyperellipticCurve& c, const PeriodData& pd, const RunConfig& cfg) {
  json j{{"schema_version", kSchemaVersion}, {"command", "periods"}, {"genus", c.genus()}};
  auto roots = json::array();
  for (const auto& r : c.roots()) roots.push_back(toJson(r));
  j["roots"] = roots;
  j["discriminant"] = toJson(discriminant(c));
  j["tau"] = toJson(pd.tau.tau());
  j["mu"] = toJson(pd.mu);
  j["mu_prime"] = toJson(pd.mu_prime);
  j["det_mu"] = toJson(pd.det_mu);
  j["symmetry_defect"] = pd.tau.symmetryDefect();
  j["min_eigenvalue_pi_im_tau"] = pd.tau.minEigenvalue();
  j["kappa"] = toJson(pd.riemann.kappa);
  j["dictionary"] = {{"max_lattice_distance", pd.riemann.max_residual},
                     {"calibration_residual", pd.riemann.calibration_residual},
                     {"divisors_checked", pd.riemann.divisors_checked}};
  j["chain_order"] = pd.chain_order;
  std::vector<std::vector<int>> cycles(pd.cycles.cols());
  for (Eigen::Index k = 0; k < pd.cycles.cols(); ++k)
    for (Eigen::Index i = 0; i < pd.cycles.rows(); ++i) cycles[k].push_back(pd.cycles(i, k));
  j["cycles_in_chain_basis"] = cycles;
  j["path_log"] = pd.path_log;
  j["max_quadrature_nodes"] = pd.max_nodes_used;
  if (cfg.emit_audit) {
    auto w = json::array();
    for (const auto& v : pd.weierstrass_integrals) w.push_back(toJson(v));
    j["weierstrass_integrals"] = w;
    j["chain_periods"] = toJson(pd.chain_periods);
  }
  if (c.genus() == 1) j["j_invariant"] = toJson(ellipticJ(pd.tau, thetaOptions(cfg, 1)));
  return j;
}

// ---- commands ----

int runChars(const RunConfig& cfg, json& out) {
  if (cfg.genus < 1 || cfg.genus > 8) throw InputError("chars needs --genus between 1 and 8");
  const int g = cfg.genus;
  out = {{"schema_version", kSchemaVersion}, {"command", "chars"}, {"genus", g}};
  auto all = json::array();
  for (const auto& c : allCharacteristics(g)) all.push_back({{"char", c.toString()}, {"parity", c.parity()}});
  out["characteristics"] = all;
  out["odd_count"] = oddCharacteristics(g).size();
  out["even_count"] = evenCharacteristics(g).size();
  auto gens = json::array();
  for (int k = 1; k <= 2 * g + 2; ++k) gens.push_back(generatorChar(g, k).toString());
  out["generators"] = gens;
  if (cfg.list_f) {
    auto systems = json::array();
    for (const auto& fs : familyBySubset(g)) {
      systems.push_back({{"source_subset", subsetJson(fs.source_subset)},
                         {"odd_part", charList(fs.odd_part)},
                         {"even_part", charList(fs.even_part)}});
    }
    out["systems"] = systems;
    out["system_count"] = systems.size();
    out["distinct_system_count"] = enumerateF(g).size();
  }
  std::cerr << "genus " << g << ": " << out["odd_count"] << " odd, " << out["even_count"] << " even characteristics";
  if (cfg.list_f) std::cerr << "; " << out["system_count"] << " fundamental systems (" << out["distinct_system_count"] << " distinct)";
  std::cerr << "\n";
  return 0;
}

int runPeriods(const RunConfig& cfg, json& out) {
  const auto c = curveFrom(cfg);
  const auto pd = periodMatrix(c);
  out = periodsJson(c, pd, cfg);
  std::cerr << "genus " << c.genus() << " period matrix; dictionary max lattice distance "
            << pd.riemann.max_residual << "\n";
  return 0;
}

int runTheta(const RunConfig& cfg, json& out) {
  SiegelPoint tau;
  if (!cfg.tau.empty()) {
    if (hasCurve(cfg)) throw InputError("give either --tau or a curve, not both");
    tau = tauFrom(cfg);
  } else {
    tau = periodMatrix(curveFrom(cfg)).tau;
  }
  const int g = tau.genus();
  const auto opts = thetaOptions(cfg, g);
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(g);
  if (!cfg.z.empty()) {
    const auto zs = parseComplexList(cfg.z);
    if (static_cast<int>(zs.size()) != g) throw InputError("--z must have g entries");
    for (int i = 0; i < g; ++i) z(i) = zs[i];
  }
  std::vector<Characteristic> chars;
  if (!cfg.chars.empty()) {
    std::stringstream ss(cfg.chars);
    for (std::string item; std::getline(ss, item, ',');) {
      const auto ch = Characteristic::parse(item);
      if (ch.genus() != g) throw InputError("characteristic " + item + " has the wrong genus");
      chars.push_back(ch);
    }
  } else {
    chars = allCharacteristics(g);
  }
  const bool at_zero = z.isZero(0);
  ThetaNullTable table(tau, opts);
  out = {{"schema_version", kSchemaVersion}, {"command", "theta"}, {"genus", g}, {"precision", toString(opts.precision)}};
  out["tau"] = toJson(tau.tau());
  out["z"] = toJson(z);
  auto vals = json::array();
  for (const auto& ch : chars) {
    const ThetaValue v = at_zero ? table.null(ch) : theta(ch, z, tau, opts);
    json e{{"char", ch.toString()},
           {"parity", ch.parity()},
           {"value", toJson(v.value)},
           {"truncation_bound", v.truncation_bound},
           {"lattice_radius", v.lattice_radius}};
    if (at_zero && ch.isOdd()) e["gradient"] = toJson(table.gradient(ch).gradient);
    vals.push_back(e);
  }
  out["values"] = vals;
  if (at_zero) {
    auto js = json::array();
    if (!cfg.chars.empty()) {
      if (static_cast<int>(chars.size()) == g && std::all_of(chars.begin(), chars.end(), [](auto& c) { return c.isOdd(); })) {
        const auto jv = table.jacobian(chars);
        js.push_back({{"odd_part", charList(chars)}, {"value", toJson(jv.value)}, {"error_bound", jv.error_bound}});
      }
    } else {
      for (const auto& fs : familyBySubset(g)) {
        const auto jv = table.jacobian(fs.odd_part);
        js.push_back({{"source_subset", subsetJson(fs.source_subset)},
                      {"odd_part", charList(fs.odd_part)},
                      {"value", toJson(jv.value)},
                      {"error_bound", jv.error_bound}});
      }
      out["modular_discriminant_log_abs"] = logModularDiscriminant(table).log_abs;
    }
    out["jacobian_nullwerte"] = js;
  }
  std::cerr << "evaluated " << chars.size() << " theta values at genus " << g << "\n";
  return 0;
}

int runNorms(const RunConfig& cfg, json& out) {
  const auto c = curveFrom(cfg);
  const int g = c.genus();
  const auto pd = periodMatrix(c);
  const auto opts = thetaOptions(cfg, g);
  ThetaNullTable table(pd.tau, opts);
  out = {{"schema_version", kSchemaVersion}, {"command", "norms"}, {"genus", g}};
  out["norm_phi"] = normedJson(normPhi(pd, table), cfg.emit_audit);
  out["norm_delta"] = normedJson(normDelta(pd, table), cfg.emit_audit);
  auto nj = json::array();
  for (const auto& s : subsets(2 * g + 2, g)) {
    auto e = normedJson(normJ(pd, s, table), cfg.emit_audit);
    e["subset"] = subsetJson(s);
    nj.push_back(e);
  }
  out["norm_j"] = nj;
  const auto lf = lemmaFormulaPhi(pd, opts);
  out["phi_product"] = {{"relative_residual", lf.relative_residual}, {"factors", lf.factors}};
  if (!cfg.points.empty()) {
    const auto xs = parseComplexList(cfg.points);
    if (xs.size() != 2) throw InputError("--points needs two x-coordinates P,Q (sheet +1)");
    const auto p = pointOnCurve(c, xs[0], 1);
    const auto q = pointOnCurve(c, xs[1], 1);
    const auto gpq = greenPrime(c, pd, p, DivisorPoint::at(q), opts);
    const auto gqp = greenPrime(c, pd, q, DivisorPoint::at(p), opts);
    out["green_prime"] = {{"P", toJson(p.x)},
                          {"Q", toJson(q.x)},
                          {"PQ", normedJson(gpq, cfg.emit_audit)},
                          {"QP", normedJson(gqp, cfg.emit_audit)},
                          {"symmetry_residual", relativeResidualFromLogs(gpq.log_value, gqp.log_value)}};
  }
  std::cerr << "||phi_" << g << "|| = " << out["norm_phi"]["value"] << ", phi product residual "
            << lf.relative_residual << "\n";
  return 0;
}

std::vector<std::string> splitNames(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

const std::vector<std::string> kTauIdentities{"jacobi", "rosenhain", "guardia", "product", "vanishing"};
const std::vector<std::string> kCurveIdentities{"dictionary", "fourth_power", "lockhart", "phi_product"};

// Runs the named identities; appends one report per identity.
void runIdentities(const std::vector<std::string>& names, const SiegelPoint& tau, const HyperellipticCurve* curve,
                   const PeriodData* pd, const ThetaOptions& opts, std::vector<IdentityReport>& reports) {
  const int g = tau.genus();
  for (const auto& name : names) {
    if (name == "jacobi") {
      reports.push_back(checkJacobi(tau, opts));
    } else if (name == "rosenhain") {
      reports.push_back(checkRosenhain(tau, opts));
    } else if (name == "guardia") {
      reports.push_back(checkGuardiaAll(tau, opts));
    } else if (name == "product") {
      reports.push_back(checkProductTheorem(tau, opts));
    } else if (name == "vanishing") {
      reports.push_back(checkVanishingStructure(tau, opts));
    } else if (name == "fourth_power") {
      reports.push_back(checkFourthPower(*pd, opts));
    } else if (name == "lockhart") {
      reports.push_back(checkLockhart(*curve, *pd, opts));
    } else if (name == "phi_product") {
      const auto lf = lemmaFormulaPhi(*pd, opts);
      IdentityReport r;
      r.identity_name = "phi_product";
      r.genus = g;
      r.relative_residual = lf.relative_residual;
      r.tolerance_used = defaultProductTolerance(g);
      r.inputs_digest = digest(tau.tau());
      r.metrics["factors"] = lf.factors;
      reports.push_back(r);
    } else if (name == "dictionary") {
      IdentityReport r;
      r.identity_name = "dictionary";
      r.genus = g;
      r.relative_residual = pd->riemann.max_residual;
      r.tolerance_used = 1e-6;
      r.inputs_digest = digest(tau.tau());
      r.metrics["divisors_checked"] = pd->riemann.divisors_checked;
      reports.push_back(r);
    } else {
      throw InputError("unknown identity '" + name + "'");
    }
  }
}

std::vector<std::string> applicable(int g, bool with_curve) {
  std::vector<std::string> names;
  if (g == 1) names.push_back("jacobi");
  if (g == 2) names.push_back("rosenhain");
  names.insert(names.end(), {"guardia", "product", "vanishing"});
  if (with_curve) names.insert(names.end(), kCurveIdentities.begin(), kCurveIdentities.end());
  return names;
}

int runVerify(const RunConfig& cfg, std::vector<json>& lines) {
  std::optional<HyperellipticCurve> curve;
  std::optional<PeriodData> pd;
  SiegelPoint tau;
  if (!cfg.tau.empty()) {
    if (hasCurve(cfg)) throw InputError("give either --tau or a curve, not both");
    tau = tauFrom(cfg);
  } else {
    curve = curveFrom(cfg);
    pd = periodMatrix(*curve);
    tau = pd->tau;
  }
  const int g = tau.genus();
  std::vector<std::string> names = cfg.identity == "all" ? applicable(g, curve.has_value()) : splitNames(cfg.identity);
  for (const auto& n : names) {
    const bool needs_curve = std::find(kCurveIdentities.begin(), kCurveIdentities.end(), n) != kCurveIdentities.end();
    if (needs_curve && !curve) throw InputError("identity '" + n + "' needs a curve, not a bare --tau");
    if (n == "jacobi" && g != 1) throw InputError("jacobi needs genus 1");
    if (n == "rosenhain" && g != 2) throw InputError("rosenhain needs genus 2");
  }
  std::vector<IdentityReport> reports;
  runIdentities(names, tau, curve ? &*curve : nullptr, pd ? &*pd : nullptr, thetaOptions(cfg, g), reports);
  int status = 0;
  for (const auto& r : reports) {
    lines.push_back(reportJson(r));
    std::cerr << (r.passed() ? "ok   " : "FAIL ") << r.identity_name << " g=" << r.genus
              << " residual=" << r.relative_residual << " tol=" << r.tolerance_used << "\n";
    if (!r.passed() && !r.conjecture) status = 1;
  }
  return status;
}

int runSuite(const RunConfig& cfg, std::vector<json>& lines) {
  const std::string path = cfg.corpus.empty() ? std::string(THETANULL_DATA_DIR) + "/curves.json" : cfg.corpus;
  std::vector<CorpusCurve> corpus;
  try {
    corpus = loadCorpus(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  int status = 0;
  int failures = 0;
  int total = 0;
  for (const auto& entry : corpus) {
    if (entry.genus > cfg.max_genus) continue;
    const auto curve = entry.curve();
    const auto pd = periodMatrix(curve);
    std::vector<IdentityReport> reports;
    runIdentities(applicable(entry.genus, true), pd.tau, &curve, &pd, thetaOptions(cfg, entry.genus), reports);
    for (const auto& r : reports) {
      auto j = reportJson(r);
      j["curve"] = entry.name;
      lines.push_back(j);
      ++total;
      if (!r.passed() && !r.conjecture) {
        status = 1;
        ++failures;
      }
    }
  }
  // directly sampled genus-one points
  std::mt19937_64 rng(cfg.seed);
  for (int k = 0; k < 20; ++k) {
    auto j = reportJson(checkJacobi(randomSiegelPoint(1, rng), thetaOptions(cfg, 1)));
    j["curve"] = "sampled-tau-" + std::to_string(k);
    lines.push_back(j);
    ++total;
    if (!j["passed"].get<bool>()) {
      status = 1;
      ++failures;
    }
  }
  std::cerr << total << " reports, " << failures << " above tolerance\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta characteristics, hyperelliptic period matrices and Jacobian Nullwert identities"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON object of option values");

  RunConfig cfg;
  if (const char* env = std::getenv("THETANULL_PRECISION")) cfg.precision = env;

  app.add_option("--genus", cfg.genus, "genus");
  app.add_option("--roots", cfg.roots, "ordered roots of f, e.g. \"-1,0,1\" or \"0.5+0.2i,...\"");
  app.add_option("--coeffs", cfg.coeffs, "coefficients of f, descending (monic leading 1 optional)");
  app.add_option("--tau", cfg.tau, "period matrix, rows separated by ';', entries by ','");
  app.add_option("--tol", cfg.tol, "theta truncation tolerance")->check(CLI::PositiveNumber);
  app.add_option("--precision", cfg.precision, "standard, extended or auto (env THETANULL_PRECISION)")
      ->check(CLI::IsMember({"standard", "extended", "auto"}));
  app.add_option("--seed", cfg.seed, "seed for sampled inputs");
  app.add_option("--output", cfg.output, "write JSON here instead of stdout");
  app.add_flag("--emit-audit", cfg.emit_audit, "include audit components");
  app.add_flag("--list-F", cfg.list_f, "list the fundamental systems");
  app.add_option("--identity", cfg.identity, "comma-separated identities or 'all'");
  app.add_option("--char", cfg.chars, "comma-separated characteristics, e.g. \"10|10,01|11\"");
  app.add_option("--z", cfg.z, "argument vector for theta");
  app.add_option("--points", cfg.points, "x-coordinates P,Q for G'");
  app.add_option("--corpus", cfg.corpus, "curve corpus JSON for suite");
  app.add_option("--max-genus", cfg.max_genus, "largest genus run by suite");

  for (const char* name : {"chars", "periods", "theta", "norms", "verify", "suite"}) {
    app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });
  }
  app.get_subcommand("chars")->description("enumerate characteristics and fundamental systems");
  app.get_subcommand("periods")->description("period matrix, Riemann vector and discriminant of a curve");
  app.get_subcommand("theta")->description("theta values, null gradients and Jacobian Nullwerte");
  app.get_subcommand("norms")->description("Petersson norms, ||J|| and G'");
  app.get_subcommand("verify")->description("identity residuals for a tau or a curve");
  app.get_subcommand("suite")->description("every applicable identity over the curve corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  int status = 0;
  std::string text;
  try {
    if (cfg.command == "verify" || cfg.command == "suite") {
      std::vector<json> lines;
      status = cfg.command == "verify" ? runVerify(cfg, lines) : runSuite(cfg, lines);
      for (const auto& l : lines) text += l.dump() + "\n";
    } else {
      json out;
      if (cfg.command == "chars") status = runChars(cfg, out);
      if (cfg.command == "periods") status = runPeriods(cfg, out);
      if (cfg.command == "theta") status = runTheta(cfg, out);
      if (cfg.command == "norms") status = runNorms(cfg, out);
      text = out.dump(2) + "\n";
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }

  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.output);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.output << "\n";
      return 2;
    }
    f << text;
  }
  return status;
}
