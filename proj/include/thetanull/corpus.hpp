#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "thetanull/curve.hpp"
#include "thetanull/siegel.hpp"

namespace thetanull {

/// Uniform double in [0, 1) from the top 53 bits; unlike the standard
/// distributions this is identical across library implementations.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Parameters of the checked-in corpus: genus g uses seed kCorpusSeed + g.
inline constexpr std::uint64_t kCorpusSeed = 20240611;
inline constexpr int kCorpusSize = 20;

struct CorpusCurve {
  std::string name;
  int genus = 0;
  std::vector<std::complex<double>> roots;

  HyperellipticCurve curve() const { return HyperellipticCurve::fromRoots(roots); }
};

/// Roots drawn uniformly in the annulus 0.5 <= |x| <= 2 (uniform radius and
/// angle), rejected until the pairwise separation is at least min_separation.
std::vector<CorpusCurve> generateCorpus(int genus, int count, std::uint64_t seed, double min_separation = 0.2);

nlohmann::json corpusToJson(const std::vector<CorpusCurve>& curves);
/// The checked-in corpus document: kCorpusSize curves for each g = 1, 2, 3.
nlohmann::json corpusDocument();
std::vector<CorpusCurve> corpusFromJson(const nlohmann::json& j);
std::vector<CorpusCurve> loadCorpus(const std::string& path);
/// Curves of one genus from a loaded corpus.
std::vector<CorpusCurve> ofGenus(const std::vector<CorpusCurve>& curves, int genus);

/// tau = X + iY with X uniform in [-1/2, 1/2] and Y = A A^T + (1/2) I,
/// A uniform in [-1/2, 1/2]; symmetric by construction.
SiegelPoint randomSiegelPoint(int genus, std::mt19937_64& rng);

}  // namespace thetanull
