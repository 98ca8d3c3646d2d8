#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace thetanull {

/// Analytic theta characteristic [top ; bottom] with entries in {0, 1/2}.
///
/// Entry b of each row is stored as bit b of a machine word; a set bit means
/// 1/2. All arithmetic is mod 1, so addition is XOR.
class Characteristic {
public:
  static constexpr int kMaxGenus = 16;

  Characteristic() = default;
  Characteristic(int genus, std::uint32_t top, std::uint32_t bottom);

  static Characteristic zero(int genus) { return {genus, 0u, 0u}; }

  int genus() const { return genus_; }
  std::uint32_t top() const { return top_; }
  std::uint32_t bottom() const { return bottom_; }

  /// Entry as a real number, 0.0 or 0.5.
  double topEntry(int i) const { return (top_ >> i) & 1u ? 0.5 : 0.0; }
  double bottomEntry(int i) const { return (bottom_ >> i) & 1u ? 0.5 : 0.0; }

  bool isZero() const { return top_ == 0 && bottom_ == 0; }

  /// +1 for even, -1 for odd: (-1)^{4 <top, bottom>}.
  int parity() const;
  bool isOdd() const { return parity() < 0; }
  bool isEven() const { return parity() > 0; }

  Characteristic operator+(const Characteristic& other) const;
  Characteristic& operator+=(const Characteristic& other);

  /// "t_1..t_g|b_1..b_g" with 1 standing for 1/2.
  std::string toString() const;
  static Characteristic parse(std::string_view text);

  auto operator<=>(const Characteristic&) const = default;

private:
  int genus_ = 1;
  std::uint32_t top_ = 0;
  std::uint32_t bottom_ = 0;
};

/// Sum mod 1 of a list of characteristics of equal genus. The empty sum of
/// genus g is the zero characteristic, so the genus must be given.
Characteristic sumChars(int genus, const std::vector<Characteristic>& chars);

/// e(a, b, c) = e(a) e(b) e(c) e(a + b + c).
int eTriple(const Characteristic& a, const Characteristic& b, const Characteristic& c);
inline bool azygetic(const Characteristic& a, const Characteristic& b, const Characteristic& c) {
  return eTriple(a, b, c) < 0;
}

/// Generator eta_k for k = 1..2g+2; k = 2g+2 is the zero characteristic.
/// For eta_{2k-1} with k = g+1 the top row is zero.
Characteristic generatorChar(int genus, int k);

/// Sorted list of 1-based indices; index 2g+2 contributes nothing.
using IndexSet = std::vector<int>;

Characteristic etaOfSubset(const IndexSet& subset, int genus);

/// U = {1, 3, ..., 2g+1}.
IndexSet oddIndices(int genus);

IndexSet symmetricDifference(const IndexSet& a, const IndexSet& b);

/// eta_{T o U}: the characteristic attached by the Weierstrass dictionary to
/// the divisor class indexed by T.
Characteristic weierstrassChar(const IndexSet& t, int genus);

struct FundamentalSystem {
  int genus = 1;
  std::vector<Characteristic> odd_part;   // g members
  std::vector<Characteristic> even_part;  // g + 2 members
  IndexSet source_subset;

  std::vector<Characteristic> members() const;
};

/// Builds the system from a g-subset of {1, ..., 2g+2}. Throws
/// std::logic_error if the result violates the parity or azygosity
/// invariants.
FundamentalSystem fundamentalSystemFromSubset(const IndexSet& subset, int genus);

/// Parity layout plus azygosity of every triplet.
bool isFundamentalSystem(const std::vector<Characteristic>& odd,
                         const std::vector<Characteristic>& even);

/// One system per g-subset of {1, ..., 2g+2}, in lexicographic subset order.
/// This is the indexing used by the product identities (C(2g+2, g) factors).
std::vector<FundamentalSystem> familyBySubset(int genus);

/// The family with duplicates removed; two systems coincide iff their sorted
/// odd parts coincide.
std::vector<FundamentalSystem> enumerateF(int genus);

std::vector<Characteristic> allCharacteristics(int genus);
std::vector<Characteristic> oddCharacteristics(int genus);
std::vector<Characteristic> evenCharacteristics(int genus);

/// All k-subsets of {1, ..., n}, lexicographic.
std::vector<IndexSet> subsets(int n, int k);

long long binomial(int n, int k);

}  // namespace thetanull
