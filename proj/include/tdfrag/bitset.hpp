#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace tdfrag {

// Runtime-sized bitset used by the exhaustive searches.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(int n) : n_(n), words_(static_cast<std::size_t>((n + 63) / 64), 0) {}

  int size() const { return n_; }
  void set(int i) { words_[idx(i)] |= bit(i); }
  void reset(int i) { words_[idx(i)] &= ~bit(i); }
  bool test(int i) const { return (words_[idx(i)] & bit(i)) != 0; }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  // Lowest set bit at or after `from`, or -1.
  int next(int from) const {
    if (from >= n_) return -1;
    std::size_t wi = idx(from);
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return static_cast<int>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      if (++wi >= words_.size()) return -1;
      w = words_[wi];
    }
  }
  int first() const { return next(0); }

  DynBitset& operator&=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // this &= ~o
  DynBitset& subtract(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  bool intersects(const DynBitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool operator==(const DynBitset&) const = default;

 private:
  static std::size_t idx(int i) { return static_cast<std::size_t>(i) >> 6; }
  static std::uint64_t bit(int i) { return std::uint64_t{1} << (i & 63); }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace tdfrag
