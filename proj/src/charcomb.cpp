#include "thetanull/charcomb.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace thetanull {

namespace {

std::uint32_t rowMask(int genus) {
  return genus >= 32 ? ~0u : ((1u << genus) - 1u);
}

void requireSameGenus(const Characteristic& a, const Characteristic& b) {
  if (a.genus() != b.genus()) {
    throw std::invalid_argument("characteristics of different genus");
  }
}

}  // namespace

Characteristic::Characteristic(int genus, std::uint32_t top, std::uint32_t bottom)
    : genus_(genus), top_(top), bottom_(bottom) {
  if (genus < 1 || genus > kMaxGenus) {
    throw std::invalid_argument("genus out of range");
  }
  if ((top & ~rowMask(genus)) || (bottom & ~rowMask(genus))) {
    throw std::invalid_argument("characteristic bits exceed genus");
  }
}

int Characteristic::parity() const {
  return (std::popcount(top_ & bottom_) & 1) ? -1 : 1;
}

Characteristic Characteristic::operator+(const Characteristic& other) const {
  requireSameGenus(*this, other);
  return {genus_, top_ ^ other.top_, bottom_ ^ other.bottom_};
}

Characteristic& Characteristic::operator+=(const Characteristic& other) {
  *this = *this + other;
  return *this;
}

std::string Characteristic::toString() const {
  std::string out;
  out.reserve(2 * genus_ + 1);
  for (int i = 0; i < genus_; ++i) out.push_back((top_ >> i) & 1u ? '1' : '0');
  out.push_back('|');
  for (int i = 0; i < genus_; ++i) out.push_back((bottom_ >> i) & 1u ? '1' : '0');
  return out;
}

Characteristic Characteristic::parse(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || bar == 0 || text.size() != 2 * bar + 1) {
    throw std::invalid_argument("malformed characteristic: " + std::string(text));
  }
  const int genus = static_cast<int>(bar);
  std::uint32_t top = 0;
  std::uint32_t bottom = 0;
  for (int i = 0; i < genus; ++i) {
    const char t = text[i];
    const char b = text[bar + 1 + i];
    if ((t != '0' && t != '1') || (b != '0' && b != '1')) {
      throw std::invalid_argument("malformed characteristic: " + std::string(text));
    }
    if (t == '1') top |= 1u << i;
    if (b == '1') bottom |= 1u << i;
  }
  return {genus, top, bottom};
}

Characteristic sumChars(int genus, const std::vector<Characteristic>& chars) {
  Characteristic acc = Characteristic::zero(genus);
  for (const auto& c : chars) acc += c;
  return acc;
}

int eTriple(const Characteristic& a, const Characteristic& b, const Characteristic& c) {
  requireSameGenus(a, b);
  requireSameGenus(a, c);
  return a.parity() * b.parity() * c.parity() * (a + b + c).parity();
}

Characteristic generatorChar(int genus, int k) {
  if (k < 1 || k > 2 * genus + 2) {
    throw std::out_of_range("generator index out of range");
  }
  if (k == 2 * genus + 2) return Characteristic::zero(genus);
  // eta_{2j-1}: top e_j, bottom 1/2 in positions 1..j-1.
  // eta_{2j}:   top e_j, bottom 1/2 in positions 1..j.
  const int j = (k + 1) / 2;
  const std::uint32_t top = j <= genus ? (1u << (j - 1)) : 0u;
  const int ones = (k % 2 == 1) ? j - 1 : j;
  const std::uint32_t bottom = rowMask(ones);
  return {genus, top, bottom};
}

Characteristic etaOfSubset(const IndexSet& subset, int genus) {
  Characteristic acc = Characteristic::zero(genus);
  for (int k : subset) {
    if (k < 1 || k > 2 * genus + 2) throw std::out_of_range("subset index out of range");
    acc += generatorChar(genus, k);
  }
  return acc;
}

IndexSet oddIndices(int genus) {
  IndexSet u;
  for (int k = 1; k <= 2 * genus + 1; k += 2) u.push_back(k);
  return u;
}

IndexSet symmetricDifference(const IndexSet& a, const IndexSet& b) {
  IndexSet sa = a;
  IndexSet sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  IndexSet out;
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                std::back_inserter(out));
  return out;
}

Characteristic weierstrassChar(const IndexSet& t, int genus) {
  return etaOfSubset(symmetricDifference(t, oddIndices(genus)), genus);
}

std::vector<Characteristic> FundamentalSystem::members() const {
  std::vector<Characteristic> all = odd_part;
  all.insert(all.end(), even_part.begin(), even_part.end());
  return all;
}

bool isFundamentalSystem(const std::vector<Characteristic>& odd,
                         const std::vector<Characteristic>& even) {
  for (const auto& c : odd)
    if (!c.isOdd()) return false;
  for (const auto& c : even)
    if (!c.isEven()) return false;
  std::vector<Characteristic> all = odd;
  all.insert(all.end(), even.begin(), even.end());
  const std::size_t n = all.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (!azygetic(all[i], all[j], all[k])) return false;
  return true;
}

FundamentalSystem fundamentalSystemFromSubset(const IndexSet& subset, int genus) {
  IndexSet s = subset;
  std::sort(s.begin(), s.end());
  if (static_cast<int>(s.size()) != genus ||
      std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::invalid_argument("subset must contain exactly g distinct indices");
  }
  for (int i : s) {
    if (i < 1 || i > 2 * genus + 2) throw std::invalid_argument("subset index out of range");
  }

  FundamentalSystem fs;
  fs.genus = genus;
  fs.source_subset = s;
  for (int k = 0; k < genus; ++k) {
    IndexSet t;
    for (int l = 0; l < genus; ++l)
      if (l != k) t.push_back(s[l]);
    fs.odd_part.push_back(weierstrassChar(t, genus));
  }
  for (int i = 1; i <= 2 * genus + 2; ++i) {
    if (std::binary_search(s.begin(), s.end(), i)) continue;
    IndexSet t = s;
    t.push_back(i);
    fs.even_part.push_back(weierstrassChar(t, genus));
  }
  if (!isFundamentalSystem(fs.odd_part, fs.even_part)) {
    throw std::logic_error("constructed set is not a fundamental system");
  }
  return fs;
}

std::vector<IndexSet> subsets(int n, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || k > n) return out;
  IndexSet cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<FundamentalSystem> familyBySubset(int genus) {
  std::vector<FundamentalSystem> out;
  for (const auto& s : subsets(2 * genus + 2, genus)) {
    out.push_back(fundamentalSystemFromSubset(s, genus));
  }
  return out;
}

std::vector<FundamentalSystem> enumerateF(int genus) {
  std::vector<FundamentalSystem> out;
  std::vector<std::vector<Characteristic>> seen;
  for (auto& fs : familyBySubset(genus)) {
    auto key = fs.odd_part;
    std::sort(key.begin(), key.end());
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    out.push_back(std::move(fs));
  }
  return out;
}

std::vector<Characteristic> allCharacteristics(int genus) {
  std::vector<Characteristic> out;
  const std::uint32_t n = 1u << genus;
  for (std::uint32_t t = 0; t < n; ++t)
    for (std::uint32_t b = 0; b < n; ++b) out.emplace_back(genus, t, b);
  return out;
}

std::vector<Characteristic> oddCharacteristics(int genus) {
  auto all = allCharacteristics(genus);
  std::erase_if(all, [](const Characteristic& c) { return c.isEven(); });
  return all;
}

std::vector<Characteristic> evenCharacteristics(int genus) {
  auto all = allCharacteristics(genus);
  std::erase_if(all, [](const Characteristic& c) { return c.isOdd(); });
  return all;
}

}  // namespace thetanull
