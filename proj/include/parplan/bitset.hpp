#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace parplan {

// Fixed-size bit vector over dense ids.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool intersects(const Bitset &o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  // every bit of *this is also set in o
  bool subset_of(const Bitset &o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  Bitset &operator&=(const Bitset &o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset &b) { return a &= b; }

  Bitset &operator|=(const Bitset &o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  bool operator==(const Bitset &o) const = default;

  template <typename F>
  void for_each(F &&f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        f(static_cast<int>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Square symmetric bit relation; set() writes both (i,j) and (j,i).
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : rows_(n, Bitset(n)) {}

  std::size_t size() const { return rows_.size(); }
  bool test(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  void set(std::size_t i, std::size_t j) {
    rows_[i].set(j);
    rows_[j].set(i);
  }
  const Bitset &row(std::size_t i) const { return rows_[i]; }

  std::size_t count_pairs() const {
    std::size_t c = 0;
    for (const auto &r : rows_) c += r.count();
    return c / 2;
  }

  bool operator==(const BitMatrix &o) const = default;

 private:
  std::vector<Bitset> rows_;
};

}  // namespace parplan
