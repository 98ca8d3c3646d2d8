#include "thetanull/corpus.hpp"

#include <fstream>
#include <numbers>
#include <stdexcept>

#include "thetanull/complex_io.hpp"

namespace thetanull {

std::vector<CorpusCurve> generateCorpus(int genus, int count, std::uint64_t seed, double min_separation) {
  if (genus < 1) throw std::invalid_argument("genus must be positive");
  std::mt19937_64 rng(seed);
  const int d = 2 * genus + 1;
  std::vector<CorpusCurve> out;
  for (int c = 0; c < count; ++c) {
    std::vector<std::complex<double>> roots;
    while (static_cast<int>(roots.size()) < d) {
      const double r = 0.5 + 1.5 * uniform01(rng);
      const double phi = 2 * std::numbers::pi * uniform01(rng);
      const std::complex<double> x = std::polar(r, phi);
      bool ok = true;
      for (const auto& y : roots) ok = ok && std::abs(x - y) >= min_separation;
      if (ok) roots.push_back(x);
    }
    out.push_back({"g" + std::to_string(genus) + "-" + std::to_string(c), genus, std::move(roots)});
  }
  return out;
}

nlohmann::json corpusToJson(const std::vector<CorpusCurve>& curves) {
  auto arr = nlohmann::json::array();
  for (const auto& c : curves) {
    auto roots = nlohmann::json::array();
    for (const auto& r : c.roots) roots.push_back(toJson(r));
    arr.push_back({{"name", c.name}, {"genus", c.genus}, {"roots", roots}});
  }
  return arr;
}

nlohmann::json corpusDocument() {
  std::vector<CorpusCurve> all;
  for (int g = 1; g <= 3; ++g) {
    auto part = generateCorpus(g, kCorpusSize, kCorpusSeed + g);
    all.insert(all.end(), part.begin(), part.end());
  }
  return {{"seed", kCorpusSeed}, {"annulus", {0.5, 2.0}}, {"min_separation", 0.2}, {"curves", corpusToJson(all)}};
}

std::vector<CorpusCurve> corpusFromJson(const nlohmann::json& j) {
  const auto& arr = j.is_object() ? j.at("curves") : j;
  std::vector<CorpusCurve> out;
  for (const auto& e : arr) {
    CorpusCurve c;
    c.name = e.at("name").get<std::string>();
    c.roots = complexListFromJson(e.at("roots"));
    c.genus = e.contains("genus") ? e.at("genus").get<int>() : static_cast<int>(c.roots.size() - 1) / 2;
    if (static_cast<int>(c.roots.size()) != 2 * c.genus + 1) throw std::invalid_argument("corpus entry " + c.name + ": root count");
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CorpusCurve> loadCorpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus " + path);
  return corpusFromJson(nlohmann::json::parse(in));
}

std::vector<CorpusCurve> ofGenus(const std::vector<CorpusCurve>& curves, int genus) {
  std::vector<CorpusCurve> out;
  for (const auto& c : curves)
    if (c.genus == genus) out.push_back(c);
  return out;
}

SiegelPoint randomSiegelPoint(int genus, std::mt19937_64& rng) {
  Eigen::MatrixXd x(genus, genus), a(genus, genus);
  for (int i = 0; i < genus; ++i)
    for (int j = 0; j < genus; ++j) a(i, j) = uniform01(rng) - 0.5;
  for (int i = 0; i < genus; ++i)
    for (int j = i; j < genus; ++j) x(i, j) = x(j, i) = uniform01(rng) - 0.5;
  const Eigen::MatrixXd y = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(genus, genus);
  Eigen::MatrixXcd tau(genus, genus);
  tau.real() = x;
  tau.imag() = y;
  return SiegelPoint(tau);
}

}  // namespace thetanull
