#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace vrpvp {

/// Bitmask over site ids 1..kMaxSites.
class SiteSet {
 public:
  static constexpr int kMaxSites = 256;

  void add(int id) { words_[word(id)] |= bit(id); }
  void remove(int id) { words_[word(id)] &= ~bit(id); }
  bool contains(int id) const { return (words_[word(id)] & bit(id)) != 0; }

  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool is_subset_of(const SiteSet& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & ~other.words_[k]) != 0) return false;
    return true;
  }

  bool intersects(const SiteSet& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & other.words_[k]) != 0) return true;
    return false;
  }

  /// Site ids in ascending order.
  std::vector<int> ids() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<int>(k) * 64 + b);
        w &= w - 1;
      }
    }
    return out;
  }

  friend bool operator==(const SiteSet&, const SiteSet&) = default;

  struct Hash {
    std::size_t operator()(const SiteSet& s) const {
      std::size_t h = 0xcbf29ce484222325ull;
      for (auto w : s.words_) {
        h ^= std::hash<std::uint64_t>{}(w);
        h *= 0x100000001b3ull;
      }
      return h;
    }
  };

 private:
  static std::size_t word(int id) { return static_cast<std::size_t>(id) / 64; }
  static std::uint64_t bit(int id) { return 1ull << (id % 64); }

  std::array<std::uint64_t, kMaxSites / 64> words_{};
};

inline SiteSet make_site_set(const std::vector<int>& ids) {
  SiteSet s;
  for (int id : ids) s.add(id);
  return s;
}

}  // namespace vrpvp
